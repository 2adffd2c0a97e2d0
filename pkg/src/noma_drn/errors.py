"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid user-facing configuration (alphabet, scenario, CLI flag)."""


class DomainError(ValueError):
    """A probability argument fell outside [0, 1]."""


class SimulationError(RuntimeError):
    """A sweep point could not be completed; no partial counts are kept."""
