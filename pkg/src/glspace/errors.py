"""Exception hierarchy shared by all glspace modules."""


class GlspaceError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GlspaceError, ValueError):
    """A numeric argument is outside the mathematical domain of the operation."""


class ConfigurationError(GlspaceError, ValueError):
    """Inputs are individually valid but mutually inconsistent (grids, supports,
    endpoint orderings, block structure, malformed run configs)."""


class InvariantViolation(GlspaceError, RuntimeError):
    """An internal invariant that construction should have guaranteed was broken."""
