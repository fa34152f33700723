"""Exception types shared across the package."""


class SweptCircleError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRangeError(SweptCircleError, ValueError):
    """A time lies outside a motion segment's [t_start, t_end] range."""


class WrongModelError(SweptCircleError, ValueError):
    """A constant-velocity routine received a motion with acceleration."""


class EmptyOverlapError(SweptCircleError, ValueError):
    """Two motion segments are never active at the same time."""


class DegenerateConicError(SweptCircleError, ValueError):
    """The delay conic is degenerate (parallel motion or a waiting agent)."""

    def __init__(self, kind, message=None):
        self.kind = kind
        super().__init__(message or f"degenerate conic: {kind}")


class ConvergenceError(SweptCircleError, RuntimeError):
    """A bisection search ran out of iterations before reaching its accuracy."""

    def __init__(self, message, bracket):
        self.bracket = bracket
        super().__init__(f"{message} (bracket={bracket})")


class UnsupportedDimensionError(SweptCircleError, ValueError):
    """An operation restricted to 2D received vectors of another dimension."""


class ScenarioError(SweptCircleError, ValueError):
    """A scenario failed to parse or validate."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
