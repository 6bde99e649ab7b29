"""Finite-horizon optimal drain scheduling.

One pool starts with some units.  At each step a drain fraction w is
picked from that step's candidate set; the step earns
coefficient * units * w bits and the pool shrinks to units * (1 - w).
``solve_dp`` finds the schedule maximizing total bits by backward
induction over the reachable pool levels; ``brute_force_oracle`` does
the same by trying every sequence and exists purely to cross-check the
solver.  ``run_algorithm1`` is the simple forward loop for a single
selected service, where the candidate set collapses to one fraction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import (
    DomainError,
    InfeasibleInstanceError,
    InstanceTooLargeError,
)

# Enumeration guard for the oracle.
_MAX_SEQUENCES = 10**6

# Pool levels agreeing to this many significant digits share a DP entry.
_MERGE_DIGITS = 12


def action_set(presence, handover, rates) -> tuple[float, ...]:
    """Candidate drain fractions derived from a user's services.

    Each service contributes (presence + handover) * rate, clamped to
    [0, 1].  Duplicates collapse; the result is ascending.

    Raises:
        DomainError: If presence leaves [0, 1] or any rate or the
            handover rate is negative.
    """
    if not 0.0 <= presence <= 1.0:
        raise DomainError(f"presence must be in [0, 1], got {presence!r}")
    if handover < 0:
        raise DomainError(f"handover rate must be >= 0, got {handover!r}")
    fractions = set()
    for rate in rates:
        if rate < 0:
            raise DomainError(f"request rate must be >= 0, got {rate!r}")
        fractions.add(min(1.0, (presence + handover) * rate))
    return tuple(sorted(fractions))


def transfer(units: float, drain: float) -> float:
    """Pool level after one step draining the given fraction."""
    if units < 0:
        raise DomainError(f"units must be >= 0, got {units!r}")
    if not 0.0 <= drain <= 1.0:
        raise DomainError(f"drain fraction must be in [0, 1], got {drain!r}")
    return units * (1.0 - drain)


def stage_value(units: float, drain: float, bits_per_unit: float) -> float:
    """Bits earned in one step at the step's unit-to-bits coefficient."""
    if units < 0:
        raise DomainError(f"units must be >= 0, got {units!r}")
    if not 0.0 <= drain <= 1.0:
        raise DomainError(f"drain fraction must be in [0, 1], got {drain!r}")
    if bits_per_unit <= 0:
        raise DomainError(f"bits per unit must be > 0, got {bits_per_unit!r}")
    return bits_per_unit * units * drain


@dataclass(frozen=True)
class DPInstance:
    """One pool's drain-scheduling problem over a fixed number of steps.

    Args:
        horizon: Number of steps, >= 1.
        initial_state: Units in the pool before the first step, >= 0.
        actions: Per-step candidate drain fractions, one collection per
            step, each fraction in [0, 1].
        coefficients: Per-step unit-to-bits coefficients, each > 0.

    Raises:
        InfeasibleInstanceError: If any step offers no action at all.
        DomainError: On any other malformed field.
    """

    horizon: int
    initial_state: float
    actions: tuple[tuple[float, ...], ...]
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if not isinstance(self.horizon, int) or self.horizon < 1:
            raise DomainError(f"horizon must be an integer >= 1, got {self.horizon!r}")
        if self.initial_state < 0:
            raise DomainError(
                f"initial state must be >= 0, got {self.initial_state!r}"
            )
        object.__setattr__(
            self, "actions", tuple(tuple(step) for step in self.actions)
        )
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if len(self.actions) != self.horizon:
            raise DomainError(
                f"{len(self.actions)} action sets for horizon {self.horizon}"
            )
        if len(self.coefficients) != self.horizon:
            raise DomainError(
                f"{len(self.coefficients)} coefficients for horizon {self.horizon}"
            )
        for t, step in enumerate(self.actions):
            if not step:
                raise InfeasibleInstanceError(f"no action available at step {t}")
            for w in step:
                if not 0.0 <= w <= 1.0:
                    raise DomainError(
                        f"step {t}: drain fraction {w!r} outside [0, 1]"
                    )
        for t, c in enumerate(self.coefficients):
            if c <= 0:
                raise DomainError(f"step {t}: coefficient must be > 0, got {c!r}")

    @classmethod
    def uniform(cls, horizon, initial_state, actions, coefficient) -> "DPInstance":
        """Same action set and coefficient at every step."""
        step = tuple(actions)
        return cls(horizon, initial_state, (step,) * horizon, (coefficient,) * horizon)

    def step_actions(self) -> list[tuple[float, ...]]:
        """Per-step actions, deduplicated and ascending."""
        return [tuple(sorted(set(step))) for step in self.actions]

    def sequence_count(self) -> int:
        return math.prod(len(set(step)) for step in self.actions)


@dataclass(frozen=True)
class PolicyTrace:
    """A drain schedule with its state path, per-step values and total.

    ``states`` has one more entry than ``actions``; the last entry is
    the pool level left after the final step.  The chain is exact:
    states[t + 1] == states[t] * (1 - actions[t]) with no re-rounding.
    """

    actions: tuple[float, ...]
    states: tuple[float, ...]
    stage_values: tuple[float, ...]
    total: float

    def as_dict(self) -> dict:
        return {
            "actions": list(self.actions),
            "states": list(self.states),
            "stage_values": list(self.stage_values),
            "total": self.total,
        }


def _merge_key(value: float) -> float:
    if value == 0.0:
        return 0.0
    return float(f"{value:.{_MERGE_DIGITS}g}")


def solve_dp(instance: DPInstance) -> PolicyTrace:
    """Optimal drain schedule by backward induction.

    Reachable pool levels form a small tree of products of kept
    fractions; levels agreeing to 12 significant digits are merged.
    Among equally valuable actions the smallest drain wins, which makes
    the returned schedule the lexicographically smallest optimum.  The
    state path is recomputed forward at the end so the returned chain is
    exact.
    """
    acts = instance.step_actions()
    coeffs = instance.coefficients
    horizon = instance.horizon

    levels: list[dict[float, float]] = [
        {_merge_key(instance.initial_state): instance.initial_state}
    ]
    for t in range(horizon):
        nxt: dict[float, float] = {}
        for x in levels[t].values():
            for w in acts[t]:
                y = transfer(x, w)
                key = _merge_key(y)
                if key not in nxt:
                    nxt[key] = y
        levels.append(nxt)

    value = {key: 0.0 for key in levels[horizon]}
    best: list[dict[float, float]] = [{} for _ in range(horizon)]
    for t in reversed(range(horizon)):
        val_t: dict[float, float] = {}
        act_t: dict[float, float] = {}
        for key, x in levels[t].items():
            best_v = None
            best_w = None
            for w in acts[t]:
                v = stage_value(x, w, coeffs[t]) + value[_merge_key(transfer(x, w))]
                if best_v is None or v > best_v:
                    best_v = v
                    best_w = w
            val_t[key] = best_v
            act_t[key] = best_w
        value = val_t
        best[t] = act_t

    actions = []
    states = [instance.initial_state]
    stage_values = []
    # Lookups follow the representative chain the induction actually
    # visited; the reported states stay the exact transfer chain.
    x = instance.initial_state
    rep = levels[0][_merge_key(instance.initial_state)]
    for t in range(horizon):
        w = best[t][_merge_key(rep)]
        actions.append(w)
        stage_values.append(stage_value(x, w, coeffs[t]))
        x = transfer(x, w)
        states.append(x)
        rep = levels[t + 1][_merge_key(transfer(rep, w))]
    return PolicyTrace(
        actions=tuple(actions),
        states=tuple(states),
        stage_values=tuple(stage_values),
        total=sum(stage_values),
    )


def brute_force_oracle(instance: DPInstance) -> PolicyTrace:
    """Best schedule by trying every drain sequence with direct simulation.

    Deliberately independent of ``solve_dp`` so the two can cross-check
    each other.  Sequences enumerate in lexicographic order and only a
    strictly better total replaces the incumbent, so ties resolve the
    same way as in the solver.

    Raises:
        InstanceTooLargeError: If the sequence count exceeds 10**6.
    """
    acts = instance.step_actions()
    count = math.prod(len(step) for step in acts)
    if count > _MAX_SEQUENCES:
        raise InstanceTooLargeError(
            f"{count} sequences exceed the enumeration guard ({_MAX_SEQUENCES})"
        )
    coeffs = instance.coefficients
    best: PolicyTrace | None = None
    for seq in itertools.product(*acts):
        x = instance.initial_state
        states = [x]
        values = []
        total = 0.0
        for w, c in zip(seq, coeffs):
            gain = c * x * w
            values.append(gain)
            total += gain
            x = x * (1.0 - w)
            states.append(x)
        if best is None or total > best.total:
            best = PolicyTrace(
                actions=tuple(seq),
                states=tuple(states),
                stage_values=tuple(values),
                total=total,
            )
    return best


def run_algorithm1(
    initial_units: float,
    presence: float,
    handover: float,
    request_rate: float,
    coefficients,
) -> PolicyTrace:
    """Forward allocation loop for a single selected service.

    With one service the candidate set holds one drain fraction,
    (presence + handover) * request_rate clamped to [0, 1]; it is
    applied at every step.  One step per coefficient.

    Raises:
        DomainError: On out-of-range inputs or an empty coefficient list.
    """
    if initial_units < 0:
        raise DomainError(f"initial units must be >= 0, got {initial_units!r}")
    coeffs = tuple(coefficients)
    if not coeffs:
        raise DomainError("at least one step coefficient is required")
    (w,) = action_set(presence, handover, [request_rate])
    x = initial_units
    states = [x]
    values = []
    for c in coeffs:
        values.append(stage_value(x, w, c))
        x = transfer(x, w)
        states.append(x)
    return PolicyTrace(
        actions=(w,) * len(coeffs),
        states=tuple(states),
        stage_values=tuple(values),
        total=sum(values),
    )
