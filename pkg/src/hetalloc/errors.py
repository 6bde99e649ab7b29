"""Exception hierarchy shared across the package."""


def _as_list(violations):
    if isinstance(violations, str):
        return [violations]
    return list(violations)


class HetAllocError(Exception):
    """Base class for every error raised by this package."""


class InvalidZoneError(HetAllocError, ValueError):
    """A zone has a non-positive radius."""


class GeometryError(HetAllocError, ValueError):
    """Service-area layout breaks containment or disjointness rules.

    Carries the full list of violations so callers can report all of
    them at once instead of fixing one and re-running.
    """

    def __init__(self, violations):
        self.violations = _as_list(violations)
        super().__init__("; ".join(self.violations))


class UnknownZoneError(HetAllocError, LookupError):
    """A zone id does not resolve within the service area."""


class DomainError(HetAllocError, ValueError):
    """A numeric argument is outside its documented range."""


class NoCoverageError(HetAllocError):
    """A user is reachable by no network at all."""


class InfeasibleDrainError(DomainError):
    """A per-step drain fraction above 1 would drive a pool negative."""


class InfeasibleInstanceError(HetAllocError, ValueError):
    """An optimization instance has an empty action set at some step."""


class InstanceTooLargeError(HetAllocError):
    """Exhaustive enumeration would exceed the sequence-count guard."""


class ScenarioError(HetAllocError):
    """Base class for scenario file problems."""


class ScenarioParseError(ScenarioError):
    """The scenario file is not readable JSON."""


class ScenarioValidationError(ScenarioError):
    """The scenario parsed but violates the schema or model invariants.

    Aggregates every violation found in one pass.
    """

    def __init__(self, violations):
        self.violations = _as_list(violations)
        head = f"{len(self.violations)} scenario violation(s)"
        super().__init__(head + ": " + "; ".join(self.violations))
