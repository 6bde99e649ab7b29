"""Circular service-area geometry.

One large circular service area contains a set of pairwise disjoint
circular wireless sub-zones.  The part of the area covered by no
sub-zone is never stored as a shape of its own: it is derived by
subtraction and addressed through ``ServiceArea.uncovered_id``.
Presence probabilities are surface ratios against the whole area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GeometryError, InvalidZoneError, UnknownZoneError

SERVICE_AREA = "service-area"
WIRELESS_SUBZONE = "wireless-subzone"

# Slack for layout checks, scaled by the area radius.
_LAYOUT_EPS = 1e-9


@dataclass(frozen=True)
class Zone:
    """A circular region: the whole service area or one wireless sub-zone.

    Args:
        id: Unique zone label, e.g. ``"Z3"``.
        center: Cartesian center in meters.
        radius: Radius in meters, strictly positive.
        kind: ``"service-area"`` or ``"wireless-subzone"``.

    Raises:
        InvalidZoneError: If the radius is not strictly positive.
    """

    id: str
    center: tuple[float, float]
    radius: float
    kind: str = WIRELESS_SUBZONE

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidZoneError(
                f"zone {self.id!r}: radius must be > 0, got {self.radius!r}"
            )


def zone_area(zone: Zone) -> float:
    """Disc surface of a zone in square meters."""
    return math.pi * zone.radius**2


def zone_perimeter(zone: Zone) -> float:
    """Boundary length of a zone in meters."""
    return 2.0 * math.pi * zone.radius


def _distance(a: tuple[float, float], b: tuple[float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


class ServiceArea:
    """The global circular zone plus the disjoint sub-zones it contains.

    Layout rules are enforced eagerly at construction: every sub-zone
    must lie entirely inside the area and no two sub-zones may overlap.
    Touching boundaries are allowed.  All violations are collected and
    reported together.

    Args:
        area_zone: The enclosing circle.
        subzones: Wireless sub-zones, in a caller-chosen stable order.
        uncovered_id: Label used to address the region covered by no
            sub-zone.  Must not collide with any zone id.

    Raises:
        GeometryError: Listing every layout violation found.
    """

    def __init__(self, area_zone: Zone, subzones=(), uncovered_id: str = "Z0"):
        subzones = tuple(subzones)
        violations = []
        slack = _LAYOUT_EPS * area_zone.radius

        seen = {area_zone.id}
        for z in subzones:
            if z.id in seen:
                violations.append(f"duplicate zone id {z.id!r}")
            seen.add(z.id)
        if uncovered_id in seen:
            violations.append(
                f"uncovered-region id {uncovered_id!r} collides with a zone id"
            )

        for z in subzones:
            reach = _distance(z.center, area_zone.center) + z.radius
            if reach > area_zone.radius + slack:
                violations.append(
                    f"subzone {z.id!r} extends outside the service area "
                    f"(reach {reach:.6g} > radius {area_zone.radius:.6g})"
                )
        for i, a in enumerate(subzones):
            for b in subzones[i + 1 :]:
                gap = _distance(a.center, b.center) - (a.radius + b.radius)
                if gap < -slack:
                    violations.append(
                        f"subzones {a.id!r} and {b.id!r} overlap "
                        f"(center distance short by {-gap:.6g})"
                    )

        if violations:
            raise GeometryError(violations)

        self.area_zone = area_zone
        self.subzones = subzones
        self.uncovered_id = uncovered_id
        self._by_id = {z.id: z for z in subzones}

    def zone(self, zone_id: str) -> Zone:
        """Resolve a concrete zone by id (the area itself or a sub-zone).

        Raises:
            UnknownZoneError: If the id names neither.
        """
        if zone_id == self.area_zone.id:
            return self.area_zone
        try:
            return self._by_id[zone_id]
        except KeyError:
            raise UnknownZoneError(f"unknown zone id {zone_id!r}") from None

    def has_zone(self, zone_id: str) -> bool:
        return zone_id == self.area_zone.id or zone_id in self._by_id

    def partition_ids(self) -> tuple[str, ...]:
        """Ids of the disjoint cells covering the area: uncovered region first."""
        return (self.uncovered_id,) + tuple(z.id for z in self.subzones)

    def total_area(self) -> float:
        return zone_area(self.area_zone)

    def presence_probability(self, zone_id: str) -> float:
        """Probability of a uniformly placed user sitting in the given cell.

        Surface of the cell over the surface of the whole area.  The
        area's own id yields 1.  The uncovered id yields the leftover
        share.

        Raises:
            UnknownZoneError: If the id resolves to nothing.
        """
        if zone_id == self.area_zone.id:
            return 1.0
        if zone_id == self.uncovered_id:
            return uncovered_area(self) / self.total_area()
        return zone_area(self.zone(zone_id)) / self.total_area()


def uncovered_area(area: ServiceArea) -> float:
    """Surface of the region covered by no wireless sub-zone, in m^2.

    Disjointness makes this a plain subtraction; the result is clamped
    at zero against rounding.
    """
    covered = math.fsum(zone_area(z) for z in area.subzones)
    return max(0.0, area.total_area() - covered)
