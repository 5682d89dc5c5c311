"""Exception hierarchy shared by the symbolic, numeric and CLI layers."""

from __future__ import annotations

from typing import Any


class XLaguerreError(Exception):
    """Base class for every error raised by xlaguerre."""


class NotDivisible(XLaguerreError):
    """Exact polynomial division left a nonzero remainder."""

    def __init__(self, message: str, remainder: Any = None):
        super().__init__(message)
        self.remainder = remainder


class DivisionByZeroPoly(XLaguerreError, ZeroDivisionError):
    """A rational function or division was asked to divide by the zero polynomial."""


class DegreeNotAdmissible(XLaguerreError, ValueError):
    """Degree lies in the excluded set of the exceptional family."""

    def __init__(self, family: str, m: int, n: int):
        super().__init__(f"degree {n} excluded for {family}, m={m}")
        self.family = family
        self.m = m
        self.n = n


class DomainError(XLaguerreError, ValueError):
    """Numeric parameter outside the admissible range."""


class ConvergenceFailure(XLaguerreError, ArithmeticError):
    """An iterative numeric method did not reach its tolerance."""


class ToleranceNotMet(XLaguerreError, ArithmeticError):
    """Quadrature finished but its error estimate exceeds the requested tolerance."""

    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result


class UsageError(XLaguerreError, ValueError):
    """Bad command-line input; maps to exit code 2."""
