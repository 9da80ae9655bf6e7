"""Exceptions and warning categories shared across the package.

Every library error derives from FtexpfitError so callers can catch the
whole family at once.  Input-shaped problems (bad series, bad files) and
numeric problems (singular systems, stalled iterations) stay separate
branches because the command line maps them to different exit codes.
"""
from __future__ import annotations

from typing import Any


class FtexpfitError(Exception):
    """Base class for all errors raised by this package."""


# --- input / validation errors ------------------------------------------------

class ValidationError(FtexpfitError):
    """A series failed validation.

    Attributes:
        index: position of the first offending sample, if applicable.
    """

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class TooShortError(FtexpfitError):
    """A series is too short to form any sliding triple."""


class ParseError(FtexpfitError):
    """A delimited input file could not be parsed.

    Attributes:
        line: 1-based line number of the offending row, if known.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message)
        self.line = line


class SchemaError(FtexpfitError):
    """A model file does not match the expected JSON schema or version."""


class DuplicateAbscissaError(FtexpfitError):
    """Two interpolation nodes share the same abscissa."""


class DimensionMismatchError(FtexpfitError):
    """Node count and exponent count disagree where exact interpolation needs them equal."""


class InsufficientDataError(FtexpfitError):
    """Not enough samples to build the requested linear-prediction system."""


# --- numeric errors -----------------------------------------------------------

class DomainError(FtexpfitError):
    """An operation was invoked outside the domain where its formula is valid."""


class ConvergenceError(FtexpfitError):
    """An iteration exhausted its budget before meeting tolerance.

    Attributes:
        last: the final iterate (shape depends on the algorithm).
        residual: the residual measure at the final iterate.
    """

    def __init__(self, message: str, last: Any = None, residual: float | None = None) -> None:
        super().__init__(message)
        self.last = last
        self.residual = residual


class SingularMatrixError(FtexpfitError):
    """Elimination hit a pivot indistinguishable from zero."""


class RootAtZeroError(FtexpfitError):
    """A characteristic root sits at the origin, so its logarithm is undefined."""


class ConjugateClosureError(FtexpfitError):
    """An estimated exponent set cannot be closed under conjugation within budget."""


class FitResidualError(FtexpfitError):
    """Interpolation coefficients were computed but the residual exceeds tolerance.

    Attributes:
        residual: achieved residual.
        tolerance: bound that was violated.
    """

    def __init__(self, message: str, residual: float, tolerance: float) -> None:
        super().__init__(message)
        self.residual = residual
        self.tolerance = tolerance


# --- warning categories -------------------------------------------------------

class IllConditionedWarning(UserWarning):
    """A linear system looked ill conditioned; the solution is still returned."""


class MonotonicityWarning(UserWarning):
    """Smoothed node abscissae are not strictly increasing."""
