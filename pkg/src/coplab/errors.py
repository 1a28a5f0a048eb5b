"""Exception types shared across the package."""


class CopLabError(Exception):
    """Base class for all coplab errors."""


class ParameterError(CopLabError):
    """An argument is outside its documented domain."""


class CapacityError(CopLabError):
    """The input exceeds a hard size gate (no silent approximation)."""


class PreconditionError(CopLabError):
    """A documented precondition on the inputs does not hold."""


class Graph6Error(CopLabError):
    """Malformed graph6 input; ``offset`` is the failing byte position."""

    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (byte {offset})")
        self.offset = offset


class StrategyFaultError(CopLabError):
    """A strategy proposed an illegal move; names the offender and state."""


class InternalContradictionError(CopLabError):
    """A move guaranteed to exist is missing, or a scripted game
    desynchronized; indicates a checker bug, not a losing position."""


class NoStrategyError(CopLabError):
    """A winning robber strategy was requested but every placement loses."""


class SoundnessError(CopLabError):
    """Two routes that must agree disagreed (cross-check failure)."""
