"""Exception types raised by the library.

Input problems derive from ``ValueError``; numerical failures derive from
``ArithmeticError`` through :class:`NumericalError`, which is what the CLI
maps to exit status 1.
"""

from __future__ import annotations


class InputLengthError(ValueError):
    """Not enough derivative data was supplied for the requested order."""


class DomainError(ValueError):
    """An index or parameter lies outside the admissible range."""


class NumericalError(ArithmeticError):
    """Base class for overflow, convergence and divergence failures."""


class NumericalOverflowError(NumericalError):
    """A floating intermediate left the representable range.

    ``order`` is set when the failure happened inside the derivative
    recursion, ``x`` when it happened while evaluating at a point.
    """

    def __init__(self, message: str, *, order: int | None = None, x: float | None = None):
        super().__init__(message)
        self.order = order
        self.x = x


class ConvergenceError(NumericalError):
    """Adaptive refinement hit its depth cap before reaching the tolerance."""

    def __init__(self, message: str, best_estimate: float, est_error: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.est_error = est_error


class DivergenceError(NumericalError):
    """The ODE state became non-finite; ``last_x`` is the last good abscissa."""

    def __init__(self, message: str, last_x: float):
        super().__init__(message)
        self.last_x = last_x
