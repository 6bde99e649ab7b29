"""Discrete-step simulation over a validated scenario.

Each step: every user with demand derives a candidate grant per
reachable pool, picks the fullest pool (mobile wins ties), and the pool
splits its remaining units among its takers according to the selected
allocator.  Grants become carried bits through the serving network's
modulation, pools shrink, and the cumulative bit count is the system
state.  Everything is deterministic given the scenario and seed; the
only consumer of randomness is the random-access baseline.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import baselines
from .allocator import AllocationRecord, ResourceState, allocate_user, enforce_capacity
from .bellman import DPInstance, action_set
from .errors import DomainError
from .mobility import exit_rate
from .scenario import ALLOCATORS, MOBILE_KIND, NetworkSpec, Scenario, UserSpec


@dataclass(frozen=True)
class SimulationRun:
    """A scenario bound to concrete run parameters.

    Raises:
        DomainError: On a horizon below 1 or an unknown allocator name.
    """

    scenario: Scenario
    horizon: int
    allocator: str
    seed: int

    def __post_init__(self):
        if not isinstance(self.horizon, int) or self.horizon < 1:
            raise DomainError(f"horizon must be an integer >= 1, got {self.horizon!r}")
        if self.allocator not in ALLOCATORS:
            raise DomainError(
                f"unknown allocator {self.allocator!r}; choose from {', '.join(ALLOCATORS)}"
            )

    @classmethod
    def from_scenario(
        cls, scenario: Scenario, allocator=None, horizon=None, seed=None
    ) -> "SimulationRun":
        """Bind a scenario, letting callers override its run parameters."""
        return cls(
            scenario=scenario,
            horizon=scenario.horizon if horizon is None else horizon,
            allocator=scenario.allocator if allocator is None else allocator,
            seed=scenario.seed if seed is None else seed,
        )


@dataclass(frozen=True)
class StepReport:
    """What happened in one step.

    ``system_state`` is the cumulative carried bits through this step;
    ``resources`` snapshots every pool after the step's grants.
    """

    step: int
    records: tuple[AllocationRecord, ...]
    blocked: tuple[int, ...]
    system_state: float
    resources: dict[tuple[str, str], float]


@dataclass(frozen=True)
class RunSummary:
    """Per-run rollup of a step-report series."""

    total_bits: float
    per_user_units: dict[int, float]
    per_user_bits: dict[int, float]
    per_user_last_network: dict[int, str]
    blocking_events: int
    final_resources: dict[tuple[str, str], float]


def _active_counts(sc: Scenario) -> dict[tuple[str, str], float]:
    counts: dict[tuple[str, str], float] = {}
    for user in sc.users:
        for svc in user.services:
            if svc.rate > 0:
                key = (user.zone, svc.id)
                counts[key] = counts.get(key, 0.0) + 1.0
    return counts


def _handover_rates(sc: Scenario, user: UserSpec, exits, counts) -> list[float]:
    base = exits.get(user.zone, 0.0)
    if sc.fixed_active_count is not None:
        return [sc.fixed_active_count * base for _ in user.services]
    return [counts.get((user.zone, s.id), 0.0) * base for s in user.services]


def _split_pool(sim, sc, pool_demands, available, rng):
    """Divide one pool's units among its takers.

    Returns (grants keyed by user id, rejected user ids).  Rejections
    only happen for the dp allocator in "block" mode, where users are
    admitted whole in ascending id order.
    """
    choice = sim.allocator
    uids = list(pool_demands)
    needs = [pool_demands[u] for u in uids]
    if choice == "dp":
        if sc.allocation_mode == "block":
            grants = {}
            rejected = []
            remaining = available
            for uid, need in zip(uids, needs):
                if need <= remaining:
                    grants[uid] = need
                    remaining -= need
                else:
                    rejected.append(uid)
            return grants, rejected
        return enforce_capacity(pool_demands, available), []

    capacity = min(available, sum(needs))
    users = tuple(
        baselines.SchedulerUser(
            demand=need,
            weight=sc.user(uid).weight,
            snr=sc.user(uid).snr,
            instantaneous_rate=sc.user(uid).instantaneous_rate,
            average_rate=sc.user(uid).average_rate,
        )
        for uid, need in zip(uids, needs)
    )
    inp = baselines.SchedulerInput(capacity=capacity, users=users)
    if choice == "round_robin":
        shares = baselines.round_robin(inp)
    elif choice == "fq":
        shares = baselines.fair_queuing(inp)
    elif choice == "maxmin":
        shares = baselines.max_min_fair(inp)
    elif choice == "wfq":
        shares = baselines.weighted_fair_queuing(inp)
    elif choice == "random":
        shares = baselines.random_access(inp, seed=rng.getrandbits(32))
    else:
        winner = (
            baselines.max_snr(inp) if choice == "maxsnr" else baselines.proportional_fair(inp)
        )
        shares = [0.0] * len(uids)
        shares[winner] = min(available, needs[winner])
    return dict(zip(uids, shares)), []


def run(sim: SimulationRun) -> list[StepReport]:
    """Simulate the bound scenario and return one report per step."""
    sc = sim.scenario
    state = ResourceState(step=0, available=sc.initial_pools())
    rng = random.Random(sim.seed)
    presence = {zid: sc.area.presence_probability(zid) for zid in sc.area.partition_ids()}
    exits = {z.id: exit_rate(sc.mobility, z, sc.area) for z in sc.area.subzones}
    counts = _active_counts(sc)
    cumulative = 0.0
    reports = []
    for t in range(sim.horizon):
        demands: dict[tuple[str, str], dict[int, float]] = {}
        pool_net: dict[tuple[str, str], NetworkSpec] = {}
        blocked: set[int] = set()
        for user in sc.users:
            rates = [s.rate for s in user.services]
            if sum(rates) <= 0:
                continue
            p = presence[user.zone]
            handovers = _handover_rates(sc, user, exits, counts)
            ranked = sorted(
                sc.candidate_pools(user.zone),
                key=lambda item: (
                    -state.available.get(item[0], 0.0),
                    0 if item[1].kind == MOBILE_KIND else 1,
                    item[1].id,
                ),
            )
            chosen = None
            for key, net in ranked:
                grant = allocate_user(state.available.get(key, 0.0), p, handovers, rates)
                if grant > 0:
                    chosen = (key, net, grant)
                    break
            if chosen is None:
                blocked.add(user.id)
                continue
            key, net, grant = chosen
            demands.setdefault(key, {})[user.id] = grant
            pool_net[key] = net

        records = []
        for key in sorted(demands):
            zone_id, net_id = key
            net = pool_net[key]
            grants, rejected = _split_pool(
                sim, sc, demands[key], state.available.get(key, 0.0), rng
            )
            blocked.update(rejected)
            for uid, granted in grants.items():
                if granted <= 0:
                    continue
                user = sc.user(uid)
                n_of, n_bit = sc.user_modulation(user, net)
                bits = net.profile.subcarriers * n_of * n_bit * granted
                cumulative += bits
                records.append(
                    AllocationRecord(uid, zone_id, net_id, t, granted, bits)
                )
                state.consume(zone_id, net_id, granted)
        state.advance()
        reports.append(
            StepReport(
                step=t,
                records=tuple(records),
                blocked=tuple(sorted(blocked)),
                system_state=cumulative,
                resources=state.snapshot(),
            )
        )
    return reports


def summarize(reports) -> RunSummary:
    """Roll a step-report series up into run totals.

    Raises:
        DomainError: If there are no reports to summarize.
    """
    reports = list(reports)
    if not reports:
        raise DomainError("cannot summarize an empty run")
    units: dict[int, float] = {}
    bits: dict[int, float] = {}
    last_net: dict[int, str] = {}
    blocking = 0
    for rep in reports:
        blocking += len(rep.blocked)
        for rec in rep.records:
            units[rec.user] = units.get(rec.user, 0.0) + rec.granted
            bits[rec.user] = bits.get(rec.user, 0.0) + rec.occupancy
            last_net[rec.user] = rec.network
    return RunSummary(
        total_bits=reports[-1].system_state,
        per_user_units=units,
        per_user_bits=bits,
        per_user_last_network=last_net,
        blocking_events=blocking,
        final_resources=dict(reports[-1].resources),
    )


def dp_instance_for_user(
    scenario: Scenario, user_id: int, network_id: str | None = None, horizon: int | None = None
) -> DPInstance:
    """One user's drain-scheduling view of one network's pool.

    Candidate drain fractions come from the user's services combined
    with presence and handover; the per-step coefficient is the
    network's subcarriers times the user's modulation.  Defaults to the
    mobile network and the scenario horizon.
    """
    user = scenario.user(user_id)
    net = scenario.network(network_id) if network_id else scenario.mobile_network()
    p = scenario.area.presence_probability(user.zone)
    exits = {z.id: exit_rate(scenario.mobility, z, scenario.area) for z in scenario.area.subzones}
    counts = _active_counts(scenario)
    handovers = _handover_rates(scenario, user, exits, counts)
    fractions = set()
    for svc, h in zip(user.services, handovers):
        fractions.update(action_set(p, h, [svc.rate]))
    n_of, n_bit = scenario.user_modulation(user, net)
    coeff = float(net.profile.subcarriers * n_of * n_bit)
    steps = scenario.horizon if horizon is None else horizon
    return DPInstance.uniform(
        steps, net.initial_resources, tuple(sorted(fractions)), coeff
    )
