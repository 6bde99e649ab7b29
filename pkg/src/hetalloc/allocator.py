"""Per-user grant equation, occupancy, capacity enforcement, pool evolution.

The grant a pool gives one user is proportional to what is left in the
pool: available units times (presence probability + handover rate) times
the request rate, summed over the user's services.  Occupancy converts
granted units to carried bits through the network's modulation profile.
When several users overdraw a pool in one step, grants are scaled back
proportionally so the pool never goes negative.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .errors import DomainError, InfeasibleDrainError, NoCoverageError
from .traffic import ModulationProfile

MOBILE = "mobile"
WIRELESS = "wireless"
BLOCKED = "blocked"

# Overdraw slack for consume(), relative to the pool size.
_CONSUME_EPS = 1e-9


@dataclass
class ResourceState:
    """Remaining resource units per (zone id, network id) pool.

    Mutable by design: the simulation engine drains it step by step.
    """

    step: int = 0
    available: dict[tuple[str, str], float] = field(default_factory=dict)

    def get(self, zone: str, network: str) -> float:
        return self.available.get((zone, network), 0.0)

    def consume(self, zone: str, network: str, amount: float) -> None:
        """Remove granted units from one pool.

        Raises:
            DomainError: On a negative amount or an overdraw beyond
                rounding slack.
        """
        if amount < 0:
            raise DomainError(f"cannot consume a negative amount ({amount!r})")
        have = self.get(zone, network)
        if amount > have + _CONSUME_EPS * max(1.0, have):
            raise DomainError(
                f"pool ({zone!r}, {network!r}) holds {have!r}, "
                f"cannot consume {amount!r}"
            )
        self.available[(zone, network)] = max(0.0, have - amount)

    def advance(self) -> None:
        self.step += 1

    def snapshot(self) -> dict[tuple[str, str], float]:
        return dict(self.available)


@dataclass(frozen=True)
class AllocationRecord:
    """One grant actually handed to a user at one step."""

    user: int
    zone: str
    network: str
    step: int
    granted: float
    occupancy: float


@dataclass(frozen=True)
class NetworkCandidate:
    """One network a user could be served by, with its offer."""

    network: str
    occupancy: float
    available: float


def allocate_user(available, presence, handover, rates) -> float:
    """Units one pool grants one user for the step.

    Args:
        available: Units left in the pool, >= 0.
        presence: Probability the user sits in the pool's zone, in [0, 1].
        handover: Handover rate, either one number shared by every
            service or a sequence aligned with ``rates``.
        rates: Per-service request rates, each >= 0.

    Returns:
        available * (presence + handover_k) * rate_k summed over services.

    Raises:
        DomainError: On any argument outside its range or a length
            mismatch between ``handover`` and ``rates``.
    """
    if available < 0:
        raise DomainError(f"available must be >= 0, got {available!r}")
    if not 0.0 <= presence <= 1.0:
        raise DomainError(f"presence must be in [0, 1], got {presence!r}")
    rates = list(rates)
    if isinstance(handover, Sequence):
        handovers = list(handover)
        if len(handovers) != len(rates):
            raise DomainError(
                f"{len(handovers)} handover rates for {len(rates)} services"
            )
    else:
        handovers = [handover] * len(rates)
    total = 0.0
    for h, r in zip(handovers, rates):
        if h < 0:
            raise DomainError(f"handover rate must be >= 0, got {h!r}")
        if r < 0:
            raise DomainError(f"request rate must be >= 0, got {r!r}")
        total += available * (presence + h) * r
    return total


def occupancy_single(profile: ModulationProfile, granted: float) -> float:
    """Bits carried by a grant on one network."""
    if granted < 0:
        raise DomainError(f"granted units must be >= 0, got {granted!r}")
    return profile.bits_per_unit() * granted


def occupancy_heterogeneous(candidates) -> tuple[str, float]:
    """Best network for a user several networks can reach.

    Highest occupancy wins; ties prefer the network with more spare
    units, then the smaller network id.

    Raises:
        NoCoverageError: If no candidate is offered at all.
    """
    candidates = list(candidates)
    if not candidates:
        raise NoCoverageError("user is reachable by no network")
    ranked = sorted(
        candidates, key=lambda c: (-c.occupancy, -c.available, c.network)
    )
    best = ranked[0]
    return best.network, best.occupancy


def select_network(x_mobile: float, x_wireless: float, need: float) -> str:
    """Pick the serving pool between a mobile and a wireless option.

    The fuller pool is tried first (mobile wins exact ties); a pool
    qualifies when it can cover the requested units.  Returns
    ``"mobile"``, ``"wireless"`` or ``"blocked"``.
    """
    for name, value in (("mobile pool", x_mobile), ("wireless pool", x_wireless), ("need", need)):
        if value < 0:
            raise DomainError(f"{name} must be >= 0, got {value!r}")
    order = (MOBILE, WIRELESS) if x_mobile >= x_wireless else (WIRELESS, MOBILE)
    levels = {MOBILE: x_mobile, WIRELESS: x_wireless}
    for choice in order:
        if levels[choice] >= need:
            return choice
    return BLOCKED


def enforce_capacity(requests: Mapping, available: float) -> dict:
    """Scale a pool's requests down proportionally when they overdraw it.

    Args:
        requests: Requested units keyed by user, each >= 0.
        available: Units left in the pool, >= 0.

    Returns:
        A new dict with the same keys; untouched when the total fits,
        otherwise scaled so the total equals ``available``.
    """
    if available < 0:
        raise DomainError(f"available must be >= 0, got {available!r}")
    for key, value in requests.items():
        if value < 0:
            raise DomainError(f"request for {key!r} must be >= 0, got {value!r}")
    total = sum(requests.values())
    if total <= available:
        return dict(requests)
    factor = available / total
    return {key: value * factor for key, value in requests.items()}


def step_state(units: float, drain: float) -> float:
    """One step of pool depletion: the remaining share is 1 - drain.

    Raises:
        InfeasibleDrainError: If the drain fraction exceeds 1.
        DomainError: On a negative drain or negative units.
    """
    if units < 0:
        raise DomainError(f"units must be >= 0, got {units!r}")
    if drain < 0:
        raise DomainError(f"drain must be >= 0, got {drain!r}")
    if drain > 1:
        raise InfeasibleDrainError(f"drain fraction {drain!r} exceeds 1")
    return units * (1.0 - drain)


def closed_form_state(initial_units: float, drain: float, steps: int) -> float:
    """Pool level after ``steps`` applications of the same drain fraction.

    Computed as initial * (1 - drain) ** steps, not by iteration, so it
    can cross-check the stepwise recursion.
    """
    if initial_units < 0:
        raise DomainError(f"initial units must be >= 0, got {initial_units!r}")
    if drain < 0:
        raise DomainError(f"drain must be >= 0, got {drain!r}")
    if drain > 1:
        raise InfeasibleDrainError(f"drain fraction {drain!r} exceeds 1")
    if not isinstance(steps, int) or steps < 0:
        raise DomainError(f"steps must be a non-negative integer, got {steps!r}")
    return initial_units * (1.0 - drain) ** steps
