"""Classical single-pool schedulers used as comparison baselines.

All of them split (or award) one pool's per-step capacity among the
users competing for it.  Dividing schedulers return one share per user;
winner-take-all schedulers return the winning index.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class SchedulerUser:
    """Per-user inputs a scheduler may consult.

    Fields a given scheduler ignores can stay at their defaults.  An
    infinite demand means the user takes whatever it is given.  Weight
    and average rate are validated by the schedulers that read them.
    """

    demand: float = math.inf
    weight: float = 1.0
    snr: float = 0.0
    instantaneous_rate: float = 0.0
    average_rate: float = 1.0

    def __post_init__(self):
        if self.demand < 0:
            raise DomainError(f"demand must be >= 0, got {self.demand!r}")
        if self.snr < 0:
            raise DomainError(f"snr must be >= 0, got {self.snr!r}")
        if self.instantaneous_rate < 0:
            raise DomainError(
                f"instantaneous rate must be >= 0, got {self.instantaneous_rate!r}"
            )


@dataclass(frozen=True)
class SchedulerInput:
    """One pool's capacity for the step plus the competing users."""

    capacity: float
    users: tuple[SchedulerUser, ...]

    def __post_init__(self):
        if self.capacity < 0:
            raise DomainError(f"capacity must be >= 0, got {self.capacity!r}")
        object.__setattr__(self, "users", tuple(self.users))


def round_robin(inp: SchedulerInput) -> list[float]:
    """Everyone gets the same share; demands are ignored."""
    n = len(inp.users)
    if n == 0:
        return []
    share = inp.capacity / n
    return [share] * n


def fair_queuing(inp: SchedulerInput) -> list[float]:
    """Equal service rate per active user.

    On a per-step capacity pool this collapses to the round-robin
    split, so it delegates.
    """
    return round_robin(inp)


def random_access(inp: SchedulerInput, seed: int) -> list[float]:
    """Whole units raffled one at a time with a seeded generator.

    Unit granularity is 1; a fractional remainder is left unallocated.
    The same seed always reproduces the same draw.
    """
    n = len(inp.users)
    if n == 0:
        return []
    rng = random.Random(seed)
    shares = [0.0] * n
    for _ in range(int(inp.capacity)):
        shares[rng.randrange(n)] += 1.0
    return shares


def max_min_fair(inp: SchedulerInput) -> list[float]:
    """Water-filling: a common level rises until capacity runs out.

    Users are served in ascending demand order; anyone needing less
    than the current equal split keeps exactly their demand, and the
    freed capacity raises the level for the rest.
    """
    n = len(inp.users)
    if n == 0:
        return []
    shares = [0.0] * n
    remaining = inp.capacity
    left = n
    for demand, index in sorted((u.demand, i) for i, u in enumerate(inp.users)):
        take = min(demand, remaining / left)
        shares[index] = take
        remaining -= take
        left -= 1
    return shares


def weighted_fair_queuing(inp: SchedulerInput) -> list[float]:
    """Weight-proportional shares with demand capping.

    Capacity freed by users already full is re-divided, still by
    weight, among those below their demand.

    Raises:
        DomainError: On a non-positive weight.
    """
    n = len(inp.users)
    for u in inp.users:
        if u.weight <= 0:
            raise DomainError(f"weight must be > 0, got {u.weight!r}")
    if n == 0:
        return []
    shares = [0.0] * n
    active = list(range(n))
    remaining = inp.capacity
    while active and remaining > 0:
        weight_sum = sum(inp.users[i].weight for i in active)
        saturated = [
            i
            for i in active
            if remaining * inp.users[i].weight / weight_sum
            >= inp.users[i].demand - shares[i]
        ]
        if not saturated:
            for i in active:
                shares[i] += remaining * inp.users[i].weight / weight_sum
            break
        for i in saturated:
            gap = inp.users[i].demand - shares[i]
            shares[i] = inp.users[i].demand
            remaining -= gap
        active = [i for i in active if i not in saturated]
        remaining = max(0.0, remaining)
    return shares


def max_snr(inp: SchedulerInput) -> int:
    """Index of the user with the strongest signal; lowest index wins ties.

    Raises:
        DomainError: If there are no users to pick from.
    """
    if not inp.users:
        raise DomainError("cannot pick a winner among zero users")
    return max(range(len(inp.users)), key=lambda i: (inp.users[i].snr, -i))


def proportional_fair(inp: SchedulerInput) -> int:
    """Index with the best instantaneous-to-average rate ratio.

    Lowest index wins ties.

    Raises:
        DomainError: If there are no users or an average rate is not
            positive.
    """
    if not inp.users:
        raise DomainError("cannot pick a winner among zero users")
    for u in inp.users:
        if u.average_rate <= 0:
            raise DomainError(f"average rate must be > 0, got {u.average_rate!r}")
    return max(
        range(len(inp.users)),
        key=lambda i: (inp.users[i].instantaneous_rate / inp.users[i].average_rate, -i),
    )
