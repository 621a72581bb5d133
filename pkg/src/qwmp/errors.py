"""Exception hierarchy shared by every qwmp module."""


class QuaternionLinalgError(Exception):
    """Base class for all errors raised by qwmp."""


class DimensionMismatch(QuaternionLinalgError, ValueError):
    pass


class IndexOutOfRange(QuaternionLinalgError, IndexError):
    pass


class RankOutOfRange(QuaternionLinalgError, ValueError):
    pass


class SizeCapExceeded(QuaternionLinalgError):
    """Full permutation expansion requested for a matrix above the size cap."""


class NotHermitian(QuaternionLinalgError, ValueError):
    pass


class NotHermitianSharp(NotHermitian):
    """A^# A (or A A^#) is not Hermitian, so the Hermitian-case formulas do not apply."""


class NotPositiveDefinite(QuaternionLinalgError, ValueError):
    pass


class SingularMatrix(QuaternionLinalgError, ArithmeticError):
    pass


class ZeroDenominator(QuaternionLinalgError, ArithmeticError):
    """Principal-minor sum vanished: the rank handed in disagrees with the minors."""


class NotInImage(QuaternionLinalgError, ValueError):
    """Complex matrix lacks the block symmetry of a quaternion embedding."""


class EmbeddingPairingFailure(QuaternionLinalgError):
    pass


class AxiomViolation(QuaternionLinalgError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class ScheduleEmpty(QuaternionLinalgError, ValueError):
    pass


class NonConvergence(QuaternionLinalgError):
    pass
