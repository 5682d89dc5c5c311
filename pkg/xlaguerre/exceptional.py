"""Type I, II and III exceptional X_m-Laguerre polynomials with α kept symbolic.

Each family is built from classical Laguerre products; the Type III family also has the
alternative and integral representations, which must agree exactly. The first-order
operators A and B factor the classical expression and generate the families:

    L^{I}_{m,n}   = −A^{I,α−1}[L_{n−m}^{α−1}]
    L^{II}_{m,n}  = −A^{II,α+1}[L_{n−m}^{α+1}]
    L^{III}_{m,n} = −A^{III,α+1}[L_{n−m−1}^{α+1}]   (and 1 for n = 0)
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Literal

from .classical import ALPHA, LaguerreIndex, alpha_binomial, laguerre
from .core import AlphaPoly, RatFunc, XPoly, poly_divide_exact
from .errors import DegreeNotAdmissible, DomainError, NotDivisible
from .memo import MemoTable

logger = logging.getLogger("xlaguerre.exceptional")


class Family(str, Enum):
    CLASSICAL = "classical"
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"

    @classmethod
    def parse(cls, value: str | Family) -> Family:
        if isinstance(value, Family):
            return value
        key = str(value).strip().upper().removeprefix("TYPE").strip("_ -")
        for member in cls:
            if member.value.upper() == key:
                return member
        raise ValueError(f"unknown family {value!r}; expected I, II, III or classical")

    @property
    def label(self) -> str:
        return "classical Laguerre" if self is Family.CLASSICAL else f"Type {self.value}"

    def min_m(self) -> int:
        return 1 if self in (Family.TYPE_I, Family.TYPE_III) else 0

    def alpha_range(self, m: int) -> tuple[float, float]:
        """Open interval of admissible numeric α."""
        if self is Family.TYPE_I:
            return (0.0, float("inf"))
        if self is Family.TYPE_II:
            return (float(m - 1), float("inf"))
        if self is Family.TYPE_III:
            return (-1.0, 0.0)
        return (-1.0, float("inf"))

    def check_alpha(self, m: int, a: float) -> None:
        lo, hi = self.alpha_range(m)
        if not lo < a < hi:
            raise DomainError(f"{self.label} with m={m} needs {lo} < alpha < {hi}, got {a}")


@dataclass(frozen=True, slots=True)
class DegreeSet:
    """Admissible degrees of a family: {m, m+1, …} for I/II, {0} ∪ {m+1, …} for III."""

    family: Family
    m: int

    def __post_init__(self) -> None:
        if self.family is not Family.CLASSICAL and self.m < self.family.min_m():
            raise ValueError(f"{self.family.label} needs m >= {self.family.min_m()}, got {self.m}")

    @property
    def excluded(self) -> range:
        if self.family is Family.TYPE_III:
            return range(1, self.m + 1)
        if self.family is Family.CLASSICAL:
            return range(0)
        return range(0, self.m)

    def admits(self, n: int) -> bool:
        return n >= 0 and n not in self.excluded

    def check(self, n: int) -> None:
        if not self.admits(n):
            raise DegreeNotAdmissible(self.family.label, self.m, n)

    def first(self, count: int) -> list[int]:
        return [n for n, _ in zip(self, range(count))]

    def up_to(self, n_max: int) -> list[int]:
        return [n for n in range(n_max + 1) if self.admits(n)]

    def __iter__(self) -> Iterator[int]:
        n = 0
        while True:
            if self.admits(n):
                yield n
            n += 1


# ---------------------------------------------------------------------------
# Polynomial families
# ---------------------------------------------------------------------------

_POLYS: MemoTable[XPoly] = MemoTable("exceptional")

_A = ALPHA
_A_MINUS_1 = LaguerreIndex.plus(-1)
_A_PLUS_1 = LaguerreIndex.plus(1)
_A_PLUS_2 = LaguerreIndex.plus(2)
_A_PLUS_3 = LaguerreIndex.plus(3)
_NEG_A_1 = LaguerreIndex.minus(-1)
_NEG_A_2 = LaguerreIndex.minus(-2)


def _memo(tag: str, m: int, n: int, build) -> XPoly:
    return _POLYS.get_or_build((tag, m, n), build)


def xlag1(m: int, n: int) -> XPoly:
    """L_m^α(−x) L_{n−m}^{α−1}(x) + L_m^{α−1}(−x) L_{n−m−1}^α(x)."""
    DegreeSet(Family.TYPE_I, m).check(n)

    def build() -> XPoly:
        return laguerre(m, _A, reflected=True) * laguerre(n - m, _A_MINUS_1) + laguerre(
            m, _A_MINUS_1, reflected=True
        ) * laguerre(n - m - 1, _A)

    return _memo("I", m, n, build)


def xlag2(m: int, n: int) -> XPoly:
    """x L_m^{−α−1}(x) L_{n−m−1}^{α+2}(x) + (m−α−1) L_m^{−α−2}(x) L_{n−m}^{α+1}(x)."""
    DegreeSet(Family.TYPE_II, m).check(n)

    def build() -> XPoly:
        x = XPoly.x()
        first = x * laguerre(m, _NEG_A_1) * laguerre(n - m - 1, _A_PLUS_2)
        second = (laguerre(m, _NEG_A_2) * laguerre(n - m, _A_PLUS_1)).scale(AlphaPoly.linear(-1, m - 1))
        return first + second

    return _memo("II", m, n, build)


def xlag3(m: int, n: int) -> XPoly:
    """x L_{n−m−2}^{α+2}(x) L_m^{−α−1}(−x) + (m+1) L_{n−m−1}^{α+1}(x) L_{m+1}^{−α−2}(−x); 1 at n = 0."""
    DegreeSet(Family.TYPE_III, m).check(n)
    if n == 0:
        return XPoly.const(1)

    def build() -> XPoly:
        x = XPoly.x()
        first = x * laguerre(n - m - 2, _A_PLUS_2) * laguerre(m, _NEG_A_1, reflected=True)
        second = laguerre(n - m - 1, _A_PLUS_1) * laguerre(m + 1, _NEG_A_2, reflected=True)
        return first + second * (m + 1)

    return _memo("III", m, n, build)


def _check_type3_positive(m: int, n: int) -> int:
    DegreeSet(Family.TYPE_III, m).check(n)
    if n == 0:
        raise DegreeNotAdmissible(Family.TYPE_III.label + " alternative form", m, n)
    return n - m


def xlag3_alt(m: int, n: int) -> XPoly:
    """(k+α)L_{k−2}^{α+1}L_m^{−α−1}(−x) + (m+1)L_{k−1}^{α+1}L_{m+1}^{−α−1}(−x) − (m+k)L_{k−1}^{α+1}L_m^{−α−1}(−x)."""
    k = _check_type3_positive(m, n)
    base = laguerre(m, _NEG_A_1, reflected=True)
    lk1 = laguerre(k - 1, _A_PLUS_1)
    return (
        (laguerre(k - 2, _A_PLUS_1) * base).scale(AlphaPoly.linear(1, k))
        + (lk1 * laguerre(m + 1, _NEG_A_1, reflected=True)) * (m + 1)
        - (lk1 * base) * (m + k)
    )


def type3_constant(m: int, k: int) -> AlphaPoly:
    """(m+1) binom(k+α, k−1) binom(m−α−1, m+1), the value of L^{III}_{m,m+k} at 0."""
    return (
        alpha_binomial(AlphaPoly.linear(1, k), k - 1) * alpha_binomial(AlphaPoly.linear(-1, m - 1), m + 1) * (m + 1)
    )


def xlag3_integral(m: int, n: int) -> XPoly:
    """(m+k) ∫_0^x L_{k−1}^{α+1}(t) L_m^{−α−1}(−t) dt + (m+1) binom(k+α, k−1) binom(m−α−1, m+1)."""
    k = _check_type3_positive(m, n)
    integrand = laguerre(k - 1, _A_PLUS_1) * laguerre(m, _NEG_A_1, reflected=True)
    return integrand.antiderivative() * (m + k) + type3_constant(m, k)


def exceptional_polynomial(family: Family | str, m: int, n: int) -> XPoly:
    family = Family.parse(family)
    if family is Family.TYPE_I:
        return xlag1(m, n)
    if family is Family.TYPE_II:
        return xlag2(m, n)
    if family is Family.TYPE_III:
        return xlag3(m, n)
    return laguerre(n, _A)


# ---------------------------------------------------------------------------
# First-order operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FirstOrderOp:
    """A or B operator of a family at parameter α + shift.

    Every operator has the shape (c1·y' + c0·y)/den; den is 1 for the A variants.
    """

    family: Family
    variant: Literal["A", "B"]
    m: int
    shift: int = 0

    def __post_init__(self) -> None:
        if self.family is Family.CLASSICAL:
            raise ValueError("classical Laguerre has no A/B operators")
        if self.variant not in ("A", "B"):
            raise ValueError(f"variant must be 'A' or 'B', got {self.variant!r}")

    def coefficients(self) -> tuple[XPoly, XPoly, XPoly]:
        m, s = self.m, self.shift
        x = XPoly.x()
        one = XPoly.const(1)
        if self.family is Family.TYPE_I:
            # β = α + s
            if self.variant == "A":
                return (
                    laguerre(m, LaguerreIndex.plus(s), reflected=True),
                    -laguerre(m, LaguerreIndex.plus(s + 1), reflected=True),
                    one,
                )
            return x, XPoly.const(AlphaPoly.linear(1, s + 1)), laguerre(m, LaguerreIndex.plus(s), reflected=True)
        if self.family is Family.TYPE_II:
            if self.variant == "A":
                return (
                    x * laguerre(m, LaguerreIndex.minus(-s)),
                    laguerre(m, LaguerreIndex.minus(-s - 1)).scale(AlphaPoly.linear(1, s - m)),
                    one,
                )
            return one, -one, laguerre(m, LaguerreIndex.minus(-s))
        if self.variant == "A":
            return (
                x * laguerre(m, LaguerreIndex.minus(-s), reflected=True),
                -laguerre(m + 1, LaguerreIndex.minus(-s - 1), reflected=True) * (m + 1),
                one,
            )
        return one, XPoly(), laguerre(m, LaguerreIndex.minus(-s), reflected=True)

    def __str__(self) -> str:
        param = "a" if self.shift == 0 else f"a{self.shift:+d}"
        return f"{self.variant}^{{{self.family.value},{param}}}_{self.m}"


def apply_first_order(op: FirstOrderOp, y: XPoly | RatFunc) -> XPoly | RatFunc:
    """A-variants map polynomials to polynomials; B-variants return a reduced RatFunc."""
    c1, c0, den = op.coefficients()
    if isinstance(y, XPoly):
        numerator = c1 * y.diff() + c0 * y
        if op.variant == "A":
            return numerator
        return RatFunc.of(numerator, den)
    return (y.diff() * c1 + y * c0) / den


def apply_first_order_poly(op: FirstOrderOp, y: XPoly) -> XPoly:
    """Polynomial-output variant: raises NotDivisible if the denominator does not divide."""
    c1, c0, den = op.coefficients()
    return poly_divide_exact(c1 * y.diff() + c0 * y, den)


def type1_from_operator(m: int, n: int) -> XPoly:
    DegreeSet(Family.TYPE_I, m).check(n)
    return -apply_first_order(FirstOrderOp(Family.TYPE_I, "A", m, -1), laguerre(n - m, _A_MINUS_1))


def type2_from_operator(m: int, n: int) -> XPoly:
    DegreeSet(Family.TYPE_II, m).check(n)
    return -apply_first_order(FirstOrderOp(Family.TYPE_II, "A", m, 1), laguerre(n - m, _A_PLUS_1))


def type3_from_operator(m: int, n: int) -> XPoly:
    DegreeSet(Family.TYPE_III, m).check(n)
    if n == 0:
        return XPoly.const(1)
    return -apply_first_order(FirstOrderOp(Family.TYPE_III, "A", m, 1), laguerre(n - m - 1, _A_PLUS_1))


# ---------------------------------------------------------------------------
# Identity checkers
# ---------------------------------------------------------------------------


def lemma2_check(m: int, k: int) -> bool:
    """(L^{III}_{m,m+k})' = (m+k) L_{k−1}^{α+1}(x) L_m^{−α−1}(−x)."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be at least 1")
    rhs = (laguerre(k - 1, _A_PLUS_1) * laguerre(m, _NEG_A_1, reflected=True)) * (m + k)
    return xlag3(m, m + k).diff() == rhs


def lemma1_check(m: int, k: int) -> bool:
    """(L^{III}_{m,m+k})' = L_m^{−α−1}(−x)[−x L_{k−3}^{α+3} + (α+2−x) L_{k−2}^{α+2} + (m+1) L_{k−1}^{α+1}]."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be at least 1")
    x = XPoly.x()
    bracket = (
        -(x * laguerre(k - 3, _A_PLUS_3))
        + (XPoly.const(AlphaPoly.linear(1, 2)) - x) * laguerre(k - 2, _A_PLUS_2)
        + laguerre(k - 1, _A_PLUS_1) * (m + 1)
    )
    return xlag3(m, m + k).diff() == laguerre(m, _NEG_A_1, reflected=True) * bracket


def critical_factor_check(m: int, k: int) -> bool:
    """(L^{III}_{m,m+k})' is divisible by L_m^{−α−1}(−x) with quotient (m+k) L_{k−1}^{α+1}."""
    try:
        quotient = poly_divide_exact(xlag3(m, m + k).diff(), laguerre(m, _NEG_A_1, reflected=True))
    except NotDivisible:
        return False
    return quotient == laguerre(k - 1, _A_PLUS_1) * (m + k)


def negativity_at_zero_check(m: int, k: int, a: float | Fraction) -> bool:
    """L^{III}_{m,m+k}(0) < 0 at numeric α = a ∈ (−1, 0)."""
    Family.TYPE_III.check_alpha(m, float(a))
    value = xlag3(m, m + k).at_x(0)(Fraction(a))
    return value < 0


def representation_check(m: int, n: int) -> dict[str, bool]:
    """Every Type III representation agrees with the defining one."""
    p = xlag3(m, n)
    return {
        "alternative": xlag3_alt(m, n) == p,
        "integral": xlag3_integral(m, n) == p,
        "operator": type3_from_operator(m, n) == p,
        "degree": p.degree == n,
    }


def _exact_at(p: XPoly, a: Fraction) -> list[Fraction]:
    return list(p.substitute(a, "exact"))


def type3_subspace_check(m: int, p: XPoly, a: Fraction | int) -> bool:
    """(L_m^{−α−1}(−x))² p lies in span{L^{III}_{m,j} : j = 0, m+1, …, deg p + 2m} at α = a.

    Exact at rational a: eliminate the top coefficient against the basis element of that
    degree, walking down; the leftover must be a multiple of L^{III}_{m,0} = 1.
    """
    a = Fraction(a)
    target = _exact_at(laguerre(m, _NEG_A_1, reflected=True) ** 2 * p, a)
    top = len(target) - 1
    for degree in range(top, m, -1):
        coeff = target[degree]
        if coeff == 0:
            continue
        basis = _exact_at(xlag3(m, degree), a)
        factor = coeff / basis[degree]
        for j, c in enumerate(basis):
            target[j] -= factor * c
    leftover = [c for c in target[1 : m + 1] if c != 0]
    if leftover:
        logger.info("type3_subspace_leftover", extra={"m": m, "alpha": str(a), "terms": len(leftover)})
    return not leftover
