"""Scenario file loading and validation.

Scenarios are JSON.  Validation is one pass that collects every
violation before raising, so a broken file reports all its problems at
once.  A top-level "notes" list is ignored and serves as free-form
commentary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DomainError,
    GeometryError,
    InvalidZoneError,
    ScenarioParseError,
    ScenarioValidationError,
)
from .geometry import SERVICE_AREA, WIRELESS_SUBZONE, ServiceArea, Zone
from .mobility import MobilityParams
from .traffic import ModulationProfile, subcarrier_order_violations

SCHEMA_VERSION = 1

ALLOCATORS = ("dp", "round_robin", "random", "fq", "maxmin", "wfq", "maxsnr", "pf")
ALLOCATION_MODES = ("scale", "block")

MOBILE_KIND = "mobile"
WIRELESS_KIND = "wireless"

_TOP_KEYS = {
    "schema_version",
    "notes",
    "service_area",
    "subzones",
    "networks",
    "mobility",
    "users",
    "horizon",
    "allocator",
    "seed",
    "allocation_mode",
}


@dataclass(frozen=True)
class ServiceSpec:
    id: str
    rate: float


@dataclass(frozen=True)
class UserSpec:
    """One user: position, requested services, optional overrides.

    ``ofdm_symbols`` and ``bits_per_symbol`` override the serving
    network's profile for this user when set.  The scheduler fields
    (weight, snr, rates) feed the baseline allocators.
    """

    id: int
    zone: str
    services: tuple[ServiceSpec, ...] = ()
    ofdm_symbols: int | None = None
    bits_per_symbol: int | None = None
    data_size: float = 0.0
    weight: float = 1.0
    snr: float = 0.0
    instantaneous_rate: float = 0.0
    average_rate: float = 1.0

    def total_rate(self) -> float:
        return sum(s.rate for s in self.services)


@dataclass(frozen=True)
class NetworkSpec:
    id: str
    kind: str
    profile: ModulationProfile
    initial_resources: float


@dataclass(frozen=True)
class Scenario:
    """A fully validated simulation input."""

    area: ServiceArea
    networks: tuple[NetworkSpec, ...]
    subzone_network: dict[str, str]
    mobility: MobilityParams
    fixed_active_count: float | None
    users: tuple[UserSpec, ...]
    horizon: int
    allocator: str
    seed: int
    allocation_mode: str = "scale"
    _network_index: dict[str, NetworkSpec] = field(default_factory=dict, repr=False)
    _user_index: dict[int, UserSpec] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_network_index", {n.id: n for n in self.networks}
        )
        object.__setattr__(self, "_user_index", {u.id: u for u in self.users})

    def network(self, network_id: str) -> NetworkSpec:
        return self._network_index[network_id]

    def user(self, user_id: int) -> UserSpec:
        return self._user_index[user_id]

    def mobile_network(self) -> NetworkSpec:
        for net in self.networks:
            if net.kind == MOBILE_KIND:
                return net
        raise DomainError("scenario has no mobile network")

    def wireless_for(self, zone_id: str) -> NetworkSpec | None:
        net_id = self.subzone_network.get(zone_id)
        return self._network_index[net_id] if net_id else None

    def candidate_pools(self, zone_id: str) -> tuple[tuple[tuple[str, str], NetworkSpec], ...]:
        """Pools able to serve a user in the given cell, mobile first.

        The mobile network runs one shared pool keyed by the area zone;
        each sub-zone's wireless network runs its own pool keyed by the
        sub-zone.
        """
        mobile = self.mobile_network()
        pools = [((self.area.area_zone.id, mobile.id), mobile)]
        wireless = self.wireless_for(zone_id)
        if wireless is not None:
            pools.append(((zone_id, wireless.id), wireless))
        return tuple(pools)

    def initial_pools(self) -> dict[tuple[str, str], float]:
        mobile = self.mobile_network()
        pools = {(self.area.area_zone.id, mobile.id): mobile.initial_resources}
        for zone_id, net_id in self.subzone_network.items():
            net = self._network_index[net_id]
            pools[(zone_id, net.id)] = net.initial_resources
        return pools

    def user_modulation(self, user: UserSpec, network: NetworkSpec) -> tuple[int, int]:
        """(OFDM symbols, bits per symbol) for a user on a network."""
        n_of = user.ofdm_symbols or network.profile.ofdm_symbols
        n_bit = user.bits_per_symbol or network.profile.bits_per_symbol
        return n_of, n_bit


def _check_unknown_keys(entry: dict, allowed: set, label: str, out: list):
    for key in entry:
        if key not in allowed:
            out.append(f"{label}: unknown key {key!r}")


def _num(entry, key, label, out, minimum=None, strict=False, default=None, required=True):
    if key not in entry:
        if required:
            out.append(f"{label}: missing {key!r}")
        return default
    value = entry[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        out.append(f"{label}: {key!r} must be a number, got {value!r}")
        return default
    value = float(value)
    if minimum is not None:
        if strict and not value > minimum:
            out.append(f"{label}: {key!r} must be > {minimum}, got {value!r}")
            return default
        if not strict and value < minimum:
            out.append(f"{label}: {key!r} must be >= {minimum}, got {value!r}")
            return default
    return value


def _int(entry, key, label, out, minimum=None, default=None, required=True):
    if key not in entry:
        if required:
            out.append(f"{label}: missing {key!r}")
        return default
    value = entry[key]
    if isinstance(value, bool) or not isinstance(value, int):
        out.append(f"{label}: {key!r} must be an integer, got {value!r}")
        return default
    if minimum is not None and value < minimum:
        out.append(f"{label}: {key!r} must be >= {minimum}, got {value!r}")
        return default
    return value


def _str(entry, key, label, out, default=None, required=True):
    if key not in entry:
        if required:
            out.append(f"{label}: missing {key!r}")
        return default
    value = entry[key]
    if not isinstance(value, str) or not value:
        out.append(f"{label}: {key!r} must be a non-empty string, got {value!r}")
        return default
    return value


def _center(entry, label, out):
    raw = entry.get("center", [0.0, 0.0])
    if (
        not isinstance(raw, list)
        or len(raw) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
    ):
        out.append(f"{label}: 'center' must be a [x, y] pair of numbers, got {raw!r}")
        return (0.0, 0.0)
    return (float(raw[0]), float(raw[1]))


def scenario_from_dict(data: dict) -> Scenario:
    """Build a validated Scenario from parsed JSON.

    Raises:
        ScenarioValidationError: Listing every violation found.
    """
    out: list[str] = []
    if not isinstance(data, dict):
        raise ScenarioValidationError(["top level must be a JSON object"])
    _check_unknown_keys(data, _TOP_KEYS, "scenario", out)

    version = _int(data, "schema_version", "scenario", out, minimum=1)
    if version is not None and version != SCHEMA_VERSION:
        out.append(f"scenario: unsupported schema_version {version}")

    notes = data.get("notes", [])
    if not isinstance(notes, list) or any(not isinstance(n, str) for n in notes):
        out.append("scenario: 'notes' must be a list of strings")

    # --- service area and subzones -------------------------------------
    area = None
    sa = data.get("service_area")
    area_id = "Z1"
    area_radius = None
    area_center = (0.0, 0.0)
    if not isinstance(sa, dict):
        out.append("scenario: missing or malformed 'service_area' object")
    else:
        _check_unknown_keys(sa, {"id", "radius", "center"}, "service_area", out)
        area_id = _str(sa, "id", "service_area", out, default="Z1", required=False) or "Z1"
        area_radius = _num(sa, "radius", "service_area", out, minimum=0.0, strict=True)
        area_center = _center(sa, "service_area", out)

    subzone_network: dict[str, str] = {}
    subzones = []
    raw_subzones = data.get("subzones", [])
    if not isinstance(raw_subzones, list):
        out.append("scenario: 'subzones' must be a list")
        raw_subzones = []
    for i, entry in enumerate(raw_subzones):
        label = f"subzones[{i}]"
        if not isinstance(entry, dict):
            out.append(f"{label}: must be an object")
            continue
        _check_unknown_keys(entry, {"id", "center", "radius", "network"}, label, out)
        zid = _str(entry, "id", label, out)
        radius = _num(entry, "radius", label, out, minimum=0.0, strict=True)
        center = _center(entry, label, out)
        net = _str(entry, "network", label, out)
        if zid is None or radius is None:
            continue
        subzones.append(Zone(zid, center, radius, WIRELESS_SUBZONE))
        if net is not None:
            subzone_network[zid] = net

    if area_radius is not None:
        try:
            area = ServiceArea(
                Zone(area_id, area_center, area_radius, SERVICE_AREA), subzones
            )
        except (GeometryError, InvalidZoneError) as exc:
            violations = getattr(exc, "violations", None) or [str(exc)]
            out.extend(f"geometry: {v}" for v in violations)

    # --- networks ------------------------------------------------------
    networks: list[NetworkSpec] = []
    net_ids: set[str] = set()
    mobile_count = 0
    raw_networks = data.get("networks")
    if not isinstance(raw_networks, list) or not raw_networks:
        out.append("scenario: 'networks' must be a non-empty list")
        raw_networks = []
    for i, entry in enumerate(raw_networks):
        label = f"networks[{i}]"
        if not isinstance(entry, dict):
            out.append(f"{label}: must be an object")
            continue
        _check_unknown_keys(
            entry,
            {"id", "kind", "subcarriers", "ofdm_symbols", "bits_per_symbol", "initial_resources"},
            label,
            out,
        )
        nid = _str(entry, "id", label, out)
        kind = _str(entry, "kind", label, out)
        if kind is not None and kind not in (MOBILE_KIND, WIRELESS_KIND):
            out.append(f"{label}: 'kind' must be 'mobile' or 'wireless', got {kind!r}")
            kind = None
        subcarriers = _int(entry, "subcarriers", label, out, minimum=1)
        n_of = _int(entry, "ofdm_symbols", label, out, minimum=1)
        n_bit = _int(entry, "bits_per_symbol", label, out, minimum=1)
        resources = _num(entry, "initial_resources", label, out, minimum=0.0)
        if nid is None:
            continue
        if nid in net_ids:
            out.append(f"{label}: duplicate network id {nid!r}")
            continue
        net_ids.add(nid)
        if None in (kind, subcarriers, n_of, n_bit, resources):
            continue
        if kind == MOBILE_KIND:
            mobile_count += 1
        networks.append(
            NetworkSpec(
                id=nid,
                kind=kind,
                profile=ModulationProfile(nid, subcarriers, n_of, n_bit),
                initial_resources=resources,
            )
        )
    if raw_networks and mobile_count != 1:
        out.append(f"scenario: exactly one mobile network is required, found {mobile_count}")
    out.extend(
        f"networks: {msg}" for msg in subcarrier_order_violations(n.profile for n in networks)
    )

    by_id = {n.id: n for n in networks}
    for zid, nid in subzone_network.items():
        net = by_id.get(nid)
        if net is None:
            # Skip ids that were parsed but dropped for other violations,
            # those are already reported.
            if raw_networks and nid not in net_ids:
                out.append(f"subzone {zid!r}: references unknown network {nid!r}")
        elif net.kind != WIRELESS_KIND:
            out.append(f"subzone {zid!r}: network {nid!r} is not a wireless network")

    # --- mobility ------------------------------------------------------
    mobility = None
    fixed_active_count = None
    raw_mob = data.get("mobility")
    if not isinstance(raw_mob, dict):
        out.append("scenario: missing or malformed 'mobility' object")
    else:
        _check_unknown_keys(raw_mob, {"mean_speed", "fixed_active_count"}, "mobility", out)
        speed = _num(raw_mob, "mean_speed", "mobility", out, minimum=0.0)
        fixed_active_count = _num(
            raw_mob, "fixed_active_count", "mobility", out, minimum=0.0, required=False
        )
        if speed is not None:
            mobility = MobilityParams(mean_speed=speed)

    # --- users ---------------------------------------------------------
    users: list[UserSpec] = []
    user_ids: set[int] = set()
    known_zones = {z.id for z in subzones}
    uncovered_id = area.uncovered_id if area is not None else "Z0"
    raw_users = data.get("users")
    if not isinstance(raw_users, list):
        out.append("scenario: 'users' must be a list")
        raw_users = []
    for i, entry in enumerate(raw_users):
        label = f"users[{i}]"
        if not isinstance(entry, dict):
            out.append(f"{label}: must be an object")
            continue
        _check_unknown_keys(
            entry,
            {
                "id", "zone", "services", "ofdm_symbols", "bits_per_symbol",
                "data_size", "weight", "snr", "instantaneous_rate", "average_rate",
            },
            label,
            out,
        )
        uid = _int(entry, "id", label, out, minimum=0)
        zone = _str(entry, "zone", label, out)
        if zone is not None and zone not in known_zones and zone != uncovered_id:
            out.append(
                f"{label}: zone {zone!r} is neither a sub-zone nor the uncovered "
                f"region {uncovered_id!r}"
            )
        services = []
        raw_services = entry.get("services", [])
        if not isinstance(raw_services, list):
            out.append(f"{label}: 'services' must be a list")
            raw_services = []
        for j, svc in enumerate(raw_services):
            svc_label = f"{label}.services[{j}]"
            if not isinstance(svc, dict):
                out.append(f"{svc_label}: must be an object")
                continue
            _check_unknown_keys(svc, {"id", "rate"}, svc_label, out)
            sid = _str(svc, "id", svc_label, out)
            rate = _num(svc, "rate", svc_label, out, minimum=0.0)
            if sid is not None and rate is not None:
                services.append(ServiceSpec(id=sid, rate=rate))
        n_of = _int(entry, "ofdm_symbols", label, out, minimum=1, required=False)
        n_bit = _int(entry, "bits_per_symbol", label, out, minimum=1, required=False)
        data_size = _num(entry, "data_size", label, out, minimum=0.0, default=0.0, required=False)
        weight = _num(entry, "weight", label, out, minimum=0.0, strict=True, default=1.0, required=False)
        snr = _num(entry, "snr", label, out, minimum=0.0, default=0.0, required=False)
        inst = _num(entry, "instantaneous_rate", label, out, minimum=0.0, default=0.0, required=False)
        avg = _num(entry, "average_rate", label, out, minimum=0.0, strict=True, default=1.0, required=False)
        if uid is None:
            continue
        if uid in user_ids:
            out.append(f"{label}: duplicate user id {uid}")
            continue
        user_ids.add(uid)
        users.append(
            UserSpec(
                id=uid,
                zone=zone or uncovered_id,
                services=tuple(services),
                ofdm_symbols=n_of,
                bits_per_symbol=n_bit,
                data_size=data_size if data_size is not None else 0.0,
                weight=weight if weight is not None else 1.0,
                snr=snr if snr is not None else 0.0,
                instantaneous_rate=inst if inst is not None else 0.0,
                average_rate=avg if avg is not None else 1.0,
            )
        )
    users.sort(key=lambda u: u.id)

    # --- run parameters ------------------------------------------------
    horizon = _int(data, "horizon", "scenario", out, minimum=1)
    seed = _int(data, "seed", "scenario", out)
    allocator = _str(data, "allocator", "scenario", out)
    if allocator is not None and allocator not in ALLOCATORS:
        out.append(
            f"scenario: unknown allocator {allocator!r}; choose from {', '.join(ALLOCATORS)}"
        )
    mode = _str(data, "allocation_mode", "scenario", out, default="scale", required=False)
    if mode is not None and mode not in ALLOCATION_MODES:
        out.append(
            f"scenario: allocation_mode must be one of {', '.join(ALLOCATION_MODES)}, got {mode!r}"
        )

    if out:
        raise ScenarioValidationError(out)

    return Scenario(
        area=area,
        networks=tuple(networks),
        subzone_network=subzone_network,
        mobility=mobility,
        fixed_active_count=fixed_active_count,
        users=tuple(users),
        horizon=horizon,
        allocator=allocator,
        seed=seed,
        allocation_mode=mode,
    )


def load_scenario(path) -> Scenario:
    """Read, parse and fully validate a scenario file.

    Raises:
        ScenarioParseError: On unreadable JSON, with line and column.
        ScenarioValidationError: Listing every schema violation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc
    return scenario_from_dict(data)
