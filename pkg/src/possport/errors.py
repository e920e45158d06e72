"""Exception hierarchy shared by all modules."""


class PossportError(Exception):
    """Base class for every error raised by this package."""


class QuadratureError(PossportError, ValueError):
    pass


class DomainError(PossportError, ValueError):
    """A function was evaluated outside the set where it is finite/defined.

    ``interval`` optionally carries the feasible interval (e.g. of
    allocations) so callers can report it.
    """

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class SingularError(PossportError, ArithmeticError):
    """A formula hit a zero denominator (zero variance, a pole, u'' = 0)."""


class BoundarySolutionError(PossportError, ArithmeticError):
    """The first-order condition has no root inside the feasible interval."""

    def __init__(self, message, upper=None):
        super().__init__(message)
        self.upper = upper


class ConfigError(PossportError, ValueError):
    """Invalid run configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConvergenceError(PossportError, ArithmeticError):
    """The root finder stopped without meeting the residual tolerance."""
