import math
from pathlib import Path

import pytest

from hetalloc.geometry import ServiceArea, Zone
from hetalloc.scenario import load_scenario, scenario_from_dict

REPO_ROOT = Path(__file__).resolve().parent.parent
TABLE3 = REPO_ROOT / "scenarios" / "table3.scenario"


@pytest.fixture(scope="session")
def table3_path():
    return TABLE3


@pytest.fixture(scope="session")
def table3():
    return load_scenario(TABLE3)


def small_scenario_dict():
    """A minimal valid scenario: one sub-zone, two networks, two users."""
    return {
        "schema_version": 1,
        "service_area": {"id": "Z1", "radius": 500, "center": [0, 0]},
        "subzones": [
            {"id": "Z2", "center": [250, 0], "radius": 100, "network": "wifi"},
        ],
        "networks": [
            {
                "id": "cell",
                "kind": "mobile",
                "subcarriers": 72,
                "ofdm_symbols": 7,
                "bits_per_symbol": 2,
                "initial_resources": 100,
            },
            {
                "id": "wifi",
                "kind": "wireless",
                "subcarriers": 128,
                "ofdm_symbols": 7,
                "bits_per_symbol": 2,
                "initial_resources": 200,
            },
        ],
        "mobility": {"mean_speed": 10},
        "horizon": 5,
        "allocator": "dp",
        "seed": 7,
        "users": [
            {"id": 0, "zone": "Z2", "services": [{"id": "video", "rate": 0.3}]},
            {"id": 1, "zone": "Z0", "services": [{"id": "voice", "rate": 0.2}]},
        ],
    }


def build_scenario(**overrides):
    data = small_scenario_dict()
    data.update(overrides)
    return scenario_from_dict(data)


def random_layout(rng, max_subzones=5):
    """Disjoint circles inside a radius-500 area, rejection sampled."""
    area = Zone("A", (0.0, 0.0), 500.0, "service-area")
    placed = []
    want = rng.randint(1, max_subzones)
    attempts = 0
    while len(placed) < want and attempts < 300:
        attempts += 1
        radius = rng.uniform(20.0, 80.0)
        dist = rng.uniform(0.0, 500.0 - radius)
        angle = rng.uniform(0.0, 2.0 * math.pi)
        center = (dist * math.cos(angle), dist * math.sin(angle))
        if all(
            math.dist(center, z.center) >= radius + z.radius for z in placed
        ):
            placed.append(Zone(f"S{len(placed)}", center, radius))
    return ServiceArea(area, placed)


def water_level_oracle(capacity, demands, iterations=60):
    """Max-min fair shares found by bisecting the common water level.

    Independent of the scheduler implementation on purpose: it never
    sorts or serves users progressively, it only searches for the level
    at which capped demands exhaust the capacity.
    """
    demands = list(demands)
    if capacity >= sum(demands):
        return demands
    lo, hi = 0.0, capacity
    for _ in range(iterations):
        mid = (lo + hi) / 2.0
        if sum(min(d, mid) for d in demands) > capacity:
            hi = mid
        else:
            lo = mid
    level = (lo + hi) / 2.0
    return [min(d, level) for d in demands]
