"""Exception hierarchy shared by every module of the package."""


class RcintError(ValueError):
    """Base class for all validation and domain errors raised by rcint."""


class NotNested(RcintError):
    """A pair (A, B) was built with A not contained in B."""


class OutOfRange(RcintError):
    """A dense index or criteria count is outside the supported range."""


class WrongLength(RcintError):
    """A value table does not have the expected number of entries."""


class BadBoundary(RcintError):
    """A capacity does not take 0 at the bottom or the top value at the top."""


class NotMonotone(RcintError):
    """A capacity decreases along a covering edge of its lattice.

    ``lower`` and ``upper`` hold the two endpoints of the offending edge.
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class DegenerateAnchor(RcintError):
    """mu(empty, N) is 0 or top, so the derived capacities are undefined."""


class NotSeparable(RcintError):
    """An interval capacity has no separable decomposition."""


class NegativeScale(RcintError):
    """Interval vectors can only be scaled by nonnegative reals."""


class LengthMismatch(RcintError):
    """Vector length does not match the number of criteria."""


class OutOfScale(RcintError):
    """A value lies outside the ordinal scale [0, top]."""


class OutOfDomain(RcintError):
    """An evaluation lies outside the domain where a capacity is defined."""


class NegativeInput(RcintError):
    """The concave integral only accepts nonnegative intervals."""


class NotChainOrdered(RcintError):
    """m-point evaluations must be nondecreasing within each criterion."""


class Infeasible(RcintError):
    """The linear program has no feasible point."""


class Unbounded(RcintError):
    """The linear program objective is unbounded above."""
