"""Semantic exception hierarchy shared by all isoratio modules."""


class IsoratioError(Exception):
    """Base class for every error raised by this library."""


class DomainError(IsoratioError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonIntegrableError(IsoratioError):
    """An improper integral was requested without a usable decay bound."""


class ToleranceNotMetError(IsoratioError):
    """Adaptive refinement stalled before reaching the requested tolerance."""


class TargetOutOfRangeError(IsoratioError):
    """A root-finding target is outside the range spanned by the bracket."""


class NotBracketedError(IsoratioError):
    """No sign change could be bracketed within the search interval."""


class PoleSingularityError(IsoratioError):
    """Pointwise evaluation was requested too close to the coordinate pole."""


class UnstableError(IsoratioError):
    """A limit extrapolation did not produce enough usable samples."""


class BoundaryMinimumError(IsoratioError):
    """A global scan found its best value at the edge of the search interval
    with the curve still decreasing toward it; no interior minimizer exists
    within resolution.  Carries the boundary estimate."""

    def __init__(self, message: str, value: float, volume: float):
        super().__init__(message)
        self.value = value
        self.volume = volume


class OrderingViolatedError(IsoratioError):
    """A pointwise functional ordering failed; carries the witness volume."""

    def __init__(self, message: str, volume: float):
        super().__init__(message)
        self.volume = volume


class ConfigError(IsoratioError):
    """A configuration file failed validation.  Carries the offending
    section and field so the CLI can point at the exact location."""

    def __init__(self, section: str, field: str, message: str):
        super().__init__(f"[{section}] {field}: {message}")
        self.section = section
        self.field = field
