"""
Exception types for the oscillatory quadrature library.

All of them derive from QuadratureError so callers (the study CLI in
particular) can map a failure to an exit code without string matching.
"""

from typing import Optional


class QuadratureError(Exception):
    """Base class for every error raised by the quadrature package."""


class DomainError(QuadratureError, ValueError):
    """An argument lies outside the domain of the operation."""


class DimensionError(QuadratureError, ValueError):
    """Degree or interval of two inputs do not agree."""


class SampleFileError(QuadratureError, ValueError):
    """A sample file could not be parsed."""


class UnknownFunctionError(QuadratureError, KeyError):
    """No built-in function is registered under the requested name."""


class ConvergenceError(QuadratureError, RuntimeError):
    """
    An iteration stopped before reaching its tolerance.

    Attributes:
        value: Last iterate, if one is meaningful (None otherwise)
        achieved_tol: Last measured change between iterates
    """

    def __init__(self, message: str, value: Optional[float] = None,
                 achieved_tol: Optional[float] = None):
        super().__init__(message)
        self.value = value
        self.achieved_tol = achieved_tol
