"""Fluid-flow mobility quantities.

Users drift through the service area with a population mean speed; the
rate at which a user crosses a cell boundary scales with the cell
perimeter and inversely with the surface of the whole area.  Handover
pressure on a service is that crossing rate times the number of users
actively holding the service.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

from .errors import DomainError
from .geometry import ServiceArea, Zone, zone_area, zone_perimeter


@dataclass(frozen=True)
class MobilityParams:
    """Population-level movement model; only the mean speed matters here.

    Args:
        mean_speed: Average user speed in m/s, non-negative.
    """

    mean_speed: float

    def __post_init__(self):
        if self.mean_speed < 0:
            raise DomainError(f"mean speed must be >= 0, got {self.mean_speed!r}")


@dataclass(frozen=True)
class HandoverContext:
    """Inputs for the handover rate of one service in one cell.

    Args:
        active_count: Number of users actively holding the service there.
        exit_rate: Boundary-crossing rate of a single user, per second.
    """

    active_count: float
    exit_rate: float

    def __post_init__(self):
        if self.active_count < 0:
            raise DomainError(f"active count must be >= 0, got {self.active_count!r}")
        if self.exit_rate < 0:
            raise DomainError(f"exit rate must be >= 0, got {self.exit_rate!r}")


def exit_rate(params: MobilityParams, cell: Zone, area: ServiceArea) -> float:
    """Rate at which one moving user leaves the given cell, per second.

    Mean speed times the cell perimeter, over pi times the surface of
    the whole service area.

    Raises:
        DomainError: If the service area has no surface.
    """
    surface = zone_area(area.area_zone)
    if surface <= 0:
        raise DomainError("service area has no surface")
    return params.mean_speed * zone_perimeter(cell) / (math.pi * surface)


def handover_rate(ctx: HandoverContext) -> float:
    """Average handover arrivals per second for the active population."""
    return ctx.active_count * ctx.exit_rate
