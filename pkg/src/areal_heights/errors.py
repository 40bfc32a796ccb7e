"""Exception hierarchy shared by every module.

The CLI maps :class:`InvalidInputError` (and subclasses) to exit status 2 and
:class:`NumericalError` to exit status 3.
"""


class ArealHeightsError(Exception):
    """Base class for all package errors."""


class InvalidInputError(ArealHeightsError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(InvalidInputError):
    """The input lies outside the domain where a result is defined."""


class UnsupportedMeasureError(InvalidInputError):
    """The requested operation is not available for this measure type."""


class NumericalError(ArealHeightsError, ArithmeticError):
    """An iterative method failed to converge.

    ``residual`` carries the best residual reached, when one is known.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DiagonalDivergenceError(InvalidInputError):
    """A mutual energy hit the diagonal (two atoms coincide)."""


class NoMinimumError(InvalidInputError):
    """A radius search interval cannot bracket a minimum."""
