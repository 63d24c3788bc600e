"""Exception hierarchy.

Everything raised on purpose by this package derives from AWCalcError, so
callers can catch one type. DomainError and UsageError additionally derive
from ValueError since they signal bad arguments.
"""


class AWCalcError(Exception):
    """Base class for all errors raised by awcalc."""


class DomainError(AWCalcError, ValueError):
    """A mathematical precondition is violated (v outside (0,1), zero
    polynomial where a nonzero one is required, exponent cap exceeded)."""


class UsageError(AWCalcError, ValueError):
    """Malformed input at an interface boundary: unparseable rational text,
    bad JSON shape, out-of-range index requests."""


class InternalError(AWCalcError):
    """An invariant the library itself guarantees failed to hold.

    Raised for instance when a solved operator equation does not reproduce a
    zero residual on recheck. Seeing this means a bug, not bad input.
    """


class DegenerateParams(DomainError):
    """Parameter vector outside the admissible set, e.g. sigma4 = q^(-m) for
    some m >= 0, which kills the leading coefficient of the equation."""


class EigenvalueCollision(DomainError):
    """Two eigenvalues of the triangular operator coincide, so the
    back-substitution for the polynomial solution divides by zero."""


class OrthogonalityBroken(AWCalcError):
    """A three-term recurrence invariant failed while building a family."""


class DependencyError(AWCalcError):
    """A verification stage was invoked without a result it depends on
    (e.g. the final chain equation before coefficient extraction)."""


class ProportionalityFailure(AWCalcError):
    """The (f_n, g_n) pairs of the chain are not a common rational multiple
    of a single (f, g), or the anchor pair is identically zero."""


class NoRationalMatch(AWCalcError):
    """The extracted final equation is not a rational multiple of the
    four-parameter form for any rational parameter vector."""
