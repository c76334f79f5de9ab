"""Domain-specific exceptions shared across the package."""


class GfqError(Exception):
    """Base class for physics-domain errors."""


class NoDoubleWell(GfqError):
    """The reduced potential has no double-well structure at these parameters."""


class WellsMerged(GfqError):
    """The bias tilt is large enough that the two wells collapse into one."""


class DispersiveInvalid(GfqError):
    """Qubit-resonator detuning is not large enough for the dispersive form."""


class ConfigurationError(GfqError):
    """Invalid or incomplete run configuration."""
