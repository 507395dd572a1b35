"""Exception hierarchy shared across the package."""


class QuadraError(Exception):
    """Base class for all quadra errors."""


class SingularMatrixError(QuadraError):
    pass


class NotSymmetricError(QuadraError):
    pass


class NotMonicError(QuadraError):
    pass


class DegreeTooHighError(QuadraError):
    pass


class IndexRangeError(QuadraError):
    pass


class OrderTooHighError(QuadraError):
    pass


class TooManyPointsError(QuadraError):
    pass


class RepeatedPointError(QuadraError):
    pass


class OddDegreeError(QuadraError):
    pass


class NonpositiveMassError(QuadraError):
    pass


class NotSingularError(QuadraError):
    pass


class NotPrgError(QuadraError):
    pass


class NotPDError(QuadraError):
    pass


class LengthMismatchError(QuadraError):
    pass


class InfeasibleSpecError(QuadraError):
    pass


class InvalidProblemError(QuadraError):
    """Input shape / invariant violations rejected before solving."""


class IndeterminateError(QuadraError):
    """Exact certificates passed but float extraction failed; rerun with
    tighter root tolerances rather than trusting a negative verdict."""
