"""Exception hierarchy shared by the library and the command-line front end."""


class ObliqueSamplingError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ObliqueSamplingError, ValueError):
    """Input data violates a documented precondition (shape, finiteness, sign)."""


class InvalidOperatorError(InvalidInputError):
    """A reconstruction operator does not have the structure an operation needs."""


class InfeasibleProblemError(ObliqueSamplingError):
    """The reconstruction space is (numerically) transversal to the sampling space."""


class UnsupportedError(ObliqueSamplingError):
    """The requested method does not apply to this configuration."""


class NumericalError(ObliqueSamplingError, ArithmeticError):
    """A self-check on floating-point results failed."""
