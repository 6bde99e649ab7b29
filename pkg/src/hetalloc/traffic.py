"""Per-user service demand and per-network OFDM modulation profiles."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class ServiceDemand:
    """One service requested by one user while sitting in one zone.

    Args:
        user: Requesting user id.
        service: Service label, e.g. ``"video"``.
        zone: Zone the user currently occupies.
        base_rate: Raw request rate of the service, per second, >= 0.
    """

    user: int
    service: str
    zone: str
    base_rate: float

    def __post_init__(self):
        if self.base_rate < 0:
            raise DomainError(f"base rate must be >= 0, got {self.base_rate!r}")


@dataclass(frozen=True)
class ModulationProfile:
    """Physical-layer shape of one network's resource unit.

    Args:
        network: Owning network id.
        subcarriers: Subcarriers per resource unit, >= 1.
        ofdm_symbols: OFDM symbols per resource unit, >= 1.
        bits_per_symbol: Bits carried per symbol, >= 1.
    """

    network: str
    subcarriers: int
    ofdm_symbols: int
    bits_per_symbol: int

    def __post_init__(self):
        for name in ("subcarriers", "ofdm_symbols", "bits_per_symbol"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DomainError(
                    f"network {self.network!r}: {name} must be an integer >= 1, "
                    f"got {value!r}"
                )

    def bits_per_unit(self) -> int:
        """Bits carried by one fully used resource unit."""
        return self.subcarriers * self.ofdm_symbols * self.bits_per_symbol


def effective_request_rate(demand: ServiceDemand, presence: float) -> float:
    """Request rate discounted by the probability of being in the zone.

    Raises:
        DomainError: If ``presence`` is outside [0, 1].
    """
    if not 0.0 <= presence <= 1.0:
        raise DomainError(f"presence must be in [0, 1], got {presence!r}")
    return presence * demand.base_rate


def subcarrier_order_violations(profiles) -> list[str]:
    """Check that subcarrier counts never decrease along the profile list.

    The list order is the capability order of the networks, so a drop in
    subcarriers means the scenario ranks a weaker network above a
    stronger one.  Returns one message per offending adjacent pair;
    empty means the order is consistent.
    """
    messages = []
    profiles = list(profiles)
    for prev, cur in zip(profiles, profiles[1:]):
        if cur.subcarriers < prev.subcarriers:
            messages.append(
                f"network {cur.network!r} has fewer subcarriers than "
                f"{prev.network!r} ({cur.subcarriers} < {prev.subcarriers}) "
                "but is listed after it"
            )
    return messages
