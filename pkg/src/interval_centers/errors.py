"""Exception hierarchy shared by the library and the command line."""


class IntervalError(ValueError):
    """Base class for every data/validation error raised by this package."""


class LowerExceedsUpper(IntervalError):
    pass


class NonFiniteBound(IntervalError):
    pass


class EmptySample(IntervalError):
    pass


class DimensionMismatch(IntervalError):
    pass


class ZeroDispersion(IntervalError):
    """A coordinate with zero dispersion was asked to normalize a nonzero distance."""


class InfeasibleRectangle(IntervalError):
    pass


class KTooLarge(IntervalError):
    pass


class InvalidConfig(IntervalError):
    pass


class MalformedHeader(IntervalError):
    pass


class RowError(IntervalError):
    def __init__(self, row, reason):
        self.row = row
        self.reason = reason
        super().__init__(f"row {row}: {reason}")
