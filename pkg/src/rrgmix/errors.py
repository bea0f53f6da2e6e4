"""Exception types raised across the package."""


class RRGError(Exception):
    """Base class for all package errors."""


class OddProduct(RRGError, ValueError):
    pass


class DegreeTooSmall(RRGError, ValueError):
    pass


class InvalidTrials(RRGError, ValueError):
    pass


class AttemptsExhausted(RRGError, RuntimeError):
    def __init__(self, attempts):
        super().__init__(f"no simple graph after {attempts} attempts")
        self.attempts = attempts


class NotSimple(RRGError, ValueError):
    pass


class ParseError(RRGError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegreeMismatch(ParseError):
    pass


class LoopOrMultiEdge(ParseError):
    pass


class IndexOutOfRange(RRGError, IndexError):
    pass


class SpaceMismatch(RRGError, ValueError):
    pass


class MassDrift(RRGError, RuntimeError):
    """Probability mass drifted beyond rounding tolerance during evolution."""


class CountOverflow(RRGError, OverflowError):
    pass


class CapExceeded(RRGError, RuntimeError):
    pass


class BudgetExceeded(RRGError, RuntimeError):
    pass


class NotConnected(RRGError, ValueError):
    pass


class MaxItersExceeded(RRGError, RuntimeError):
    pass


class BadDegree(RRGError, ValueError):
    pass


class BadLevel(RRGError, ValueError):
    pass


class BadEpsilon(BadLevel):
    pass


class NotReached(RRGError):
    """The profile never dropped below the requested level within its horizon."""

    def __init__(self, t_max, epsilon=None):
        super().__init__(f"d(t) never below {epsilon} for t <= {t_max}")
        self.t_max = t_max
        self.epsilon = epsilon
