"""Exceptional X_m-Laguerre polynomials of Types I, II and III.

Polynomials are built exactly over Q[α] (α symbolic); numeric checks fix α and work
through RealPoly. Entry points:

    from xlaguerre import Family, exceptional_polynomial, format_xpoly
    format_xpoly(exceptional_polynomial(Family.TYPE_III, 1, 2))   # 'x^2 - 2*a*x + a*(a+1)'
"""

from .core import AlphaPoly, RatFunc, XPoly, format_xpoly, parse_xpoly, substitute_alpha
from .errors import (
    ConvergenceFailure,
    DegreeNotAdmissible,
    DivisionByZeroPoly,
    DomainError,
    NotDivisible,
    ToleranceNotMet,
    UsageError,
    XLaguerreError,
)
from .exceptional import DegreeSet, Family, exceptional_polynomial, xlag1, xlag2, xlag3
from .realpoly import RealPoly

__all__ = [
    "AlphaPoly",
    "ConvergenceFailure",
    "DegreeNotAdmissible",
    "DegreeSet",
    "DivisionByZeroPoly",
    "DomainError",
    "Family",
    "NotDivisible",
    "RatFunc",
    "RealPoly",
    "ToleranceNotMet",
    "UsageError",
    "XLaguerreError",
    "XPoly",
    "exceptional_polynomial",
    "format_xpoly",
    "parse_xpoly",
    "substitute_alpha",
    "xlag1",
    "xlag2",
    "xlag3",
]
