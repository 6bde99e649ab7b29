"""Deterministic radio-resource allocation across a heterogeneous network.

A circular service area served by one mobile network contains disjoint
wireless sub-zones with networks of their own.  Users drift under a
fluid-flow mobility model, request services, and draw resource units
from per-pool budgets.  The package models the geometry, mobility and
per-user grant equation, solves the finite-horizon drain-scheduling
problem exactly by dynamic programming, ships seven classical scheduler
baselines for comparison, and wraps everything into a scenario-driven
simulation engine with a CLI.
"""

from .allocator import (
    AllocationRecord,
    NetworkCandidate,
    ResourceState,
    allocate_user,
    closed_form_state,
    enforce_capacity,
    occupancy_heterogeneous,
    occupancy_single,
    select_network,
    step_state,
)
from .baselines import (
    SchedulerInput,
    SchedulerUser,
    fair_queuing,
    max_min_fair,
    max_snr,
    proportional_fair,
    random_access,
    round_robin,
    weighted_fair_queuing,
)
from .bellman import (
    DPInstance,
    PolicyTrace,
    action_set,
    brute_force_oracle,
    run_algorithm1,
    solve_dp,
    stage_value,
    transfer,
)
from .engine import (
    RunSummary,
    SimulationRun,
    StepReport,
    dp_instance_for_user,
    run,
    summarize,
)
from .errors import (
    DomainError,
    GeometryError,
    HetAllocError,
    InfeasibleDrainError,
    InfeasibleInstanceError,
    InstanceTooLargeError,
    InvalidZoneError,
    NoCoverageError,
    ScenarioError,
    ScenarioParseError,
    ScenarioValidationError,
    UnknownZoneError,
)
from .geometry import ServiceArea, Zone, uncovered_area, zone_area, zone_perimeter
from .mobility import HandoverContext, MobilityParams, exit_rate, handover_rate
from .report import ReportRow, build_rows, emit_report, parse_report_csv
from .scenario import (
    ALLOCATORS,
    NetworkSpec,
    Scenario,
    ServiceSpec,
    UserSpec,
    load_scenario,
    scenario_from_dict,
)
from .traffic import (
    ModulationProfile,
    ServiceDemand,
    effective_request_rate,
    subcarrier_order_violations,
)

__version__ = "0.1.0"
