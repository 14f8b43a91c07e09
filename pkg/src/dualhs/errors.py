"""Exception hierarchy shared by every layer of the package."""


class DualError(Exception):
    """Base class for all errors raised by :mod:`dualhs`."""


class DimensionMismatch(DualError, ValueError):
    pass


class NotSquare(DualError, ValueError):
    pass


class SingularStandardPart(DualError, ArithmeticError):
    """The standard part is (numerically) singular, so no dual inverse exists."""


class NegativeOrInfinitesimalSqrt(DualError, ArithmeticError):
    pass


class InfinitesimalDivision(DualError, ZeroDivisionError):
    """Division by a dual number whose standard part is zero."""


class NumericalFailure(DualError, ArithmeticError):
    """Base for failures of an iterative kernel or of a self-check."""


class ConvergenceFailure(NumericalFailure):
    pass


class DegenerateCoupling(NumericalFailure):
    """The dual-part correction of an SVD could not be made consistent."""


class MatrixFormatError(DualError, ValueError):
    """A matrix JSON document does not follow the expected schema."""
