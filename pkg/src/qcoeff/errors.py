"""Exception types raised across the package."""


class QcoeffError(Exception):
    """Base class for all package errors."""


class DimensionError(QcoeffError, ValueError):
    """Operand shapes are incompatible."""


class NotHermitianError(QcoeffError, ValueError):
    pass


class SingularMatrixError(QcoeffError, ValueError):
    """Matrix is rank deficient at the requested tolerance."""


class ZeroStateError(QcoeffError, ValueError):
    pass


class NormalizationError(QcoeffError, ValueError):
    """Coefficient matrix does not have unit Frobenius norm."""


class NotUnitaryError(QcoeffError, ValueError):
    pass


class ImpossibleOutcomeError(QcoeffError, ValueError):
    """Measurement outcome has (numerically) zero probability."""
