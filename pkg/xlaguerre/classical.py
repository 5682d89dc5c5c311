"""Classical Laguerre polynomials L_n^β with symbolic parameters β = ±α + c.

Built by the three-term recurrence
    (k+1) L_{k+1} = (2k+1+β−x) L_k − (k+β) L_{k−1},  L_0 = 1,
with the convention L_n = 0 for n < 0. Values are memoized per (n, β).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import gamma

from .core import AlphaPoly, XPoly
from .errors import DomainError
from .memo import MemoTable

logger = logging.getLogger("xlaguerre.classical")


@dataclass(frozen=True, slots=True)
class LaguerreIndex:
    """Parameter sign·α + offset, e.g. (−1, −2) is −α−2."""

    sign: int = 1
    offset: int = 0

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def plus(cls, offset: int = 0) -> LaguerreIndex:
        return cls(1, offset)

    @classmethod
    def minus(cls, offset: int = 0) -> LaguerreIndex:
        return cls(-1, offset)

    def as_alpha(self) -> AlphaPoly:
        return AlphaPoly.linear(self.sign, self.offset)

    def shifted(self, k: int) -> LaguerreIndex:
        """Parameter + k."""
        return LaguerreIndex(self.sign, self.offset + k)

    def substituted(self, s: int) -> LaguerreIndex:
        """The same parameter after α → α + s."""
        return LaguerreIndex(self.sign, self.offset + self.sign * s)

    def at(self, a: float) -> float:
        return self.sign * a + self.offset

    def __str__(self) -> str:
        head = "a" if self.sign == 1 else "-a"
        if self.offset == 0:
            return head
        return f"{head}{self.offset:+d}"


ALPHA = LaguerreIndex.plus()

_LAGUERRE: MemoTable[XPoly] = MemoTable("laguerre")


def _recurrence(n: int, param: LaguerreIndex) -> XPoly:
    beta = param.as_alpha()
    x = XPoly.x()
    prev, cur = XPoly(), XPoly.const(1)
    for k in range(n):
        nxt = (XPoly.const(beta + (2 * k + 1)) - x) * cur - prev.scale(beta + k)
        prev, cur = cur, nxt * Fraction(1, k + 1)
    return cur


def laguerre(n: int, param: LaguerreIndex = ALPHA, reflected: bool = False) -> XPoly:
    """L_n^{param}(x), or L_n^{param}(−x) when reflected. Zero for n < 0."""
    if n < 0:
        return XPoly()
    base = _LAGUERRE.get_or_build((n, param), lambda: _recurrence(n, param))
    return base.reflect() if reflected else base


def alpha_binomial(top: AlphaPoly, k: int) -> AlphaPoly:
    """binom(top, k) = top(top−1)…(top−k+1)/k! as a polynomial in α; 0 for k < 0."""
    if k < 0:
        return AlphaPoly()
    out = AlphaPoly.const(1)
    for t in range(k):
        out = out * (top - t)
    return out * Fraction(1, math.factorial(k))


def laguerre_binomial(n: int, param: LaguerreIndex = ALPHA) -> AlphaPoly:
    """binom(n+β, n), the value L_n^β(0)."""
    return alpha_binomial(param.as_alpha() + n, n)


def laguerre_explicit(n: int, param: LaguerreIndex = ALPHA) -> XPoly:
    """Σ_j (−1)^j binom(n+β, n−j) x^j / j!; independent of the recurrence."""
    if n < 0:
        return XPoly()
    top = param.as_alpha() + n
    coeffs = [
        alpha_binomial(top, n - j) * Fraction((-1) ** j, math.factorial(j))
        for j in range(n + 1)
    ]
    return XPoly(tuple(coeffs))


def reflected_equation_residual(n: int, param: LaguerreIndex) -> XPoly:
    """x u'' + (x + β + 1) u' − n u for u = L_n^β(−x); zero when the identity holds."""
    u = laguerre(n, param, reflected=True)
    x = XPoly.x()
    return x * u.diff().diff() + (x + param.as_alpha() + 1) * u.diff() - u.scale(n)


def laguerre_derivative_identity_check(n: int, param: LaguerreIndex = ALPHA) -> bool:
    """(L_n^β)' = −L_{n−1}^{β+1}, (L_n^β(−x))' = L_{n−1}^{β+1}(−x), and the reflected ODE.

    The reflected ODE is checked for L_n^β(−x) and in its literal form for
    L_{n+1}^{−α−2}(−x), which is the case the factorization proofs rely on.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    up = param.shifted(1)
    direct = laguerre(n, param).diff() == -laguerre(n - 1, up)
    reflected = laguerre(n, param, reflected=True).diff() == laguerre(n - 1, up, reflected=True)
    ode_general = reflected_equation_residual(n, param).is_zero
    ode_literal = reflected_equation_residual(n + 1, LaguerreIndex.minus(-2)).is_zero
    ok = direct and reflected and ode_general and ode_literal
    if not ok:
        logger.warning(
            "laguerre_derivative_identity_failed",
            extra={"n": n, "param": str(param), "direct": direct, "reflected": reflected},
        )
    return ok


def laguerre_three_point_identities(n: int, param: LaguerreIndex = ALPHA) -> bool:
    """x (L_n^β)' = −(n+β) L_{n−1}^β + n L_n^β  and  L_n^β = L_n^{β+1} − L_{n−1}^{β+1}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    beta = param.as_alpha()
    lhs = XPoly.x() * laguerre(n, param).diff()
    rhs = -laguerre(n - 1, param).scale(beta + n) + laguerre(n, param).scale(n)
    up = param.shifted(1)
    return lhs == rhs and laguerre(n, param) == laguerre(n, up) - laguerre(n - 1, up)


def classical_eigen_residual(n: int, param: LaguerreIndex = ALPHA) -> XPoly:
    """−x y'' + (x − β − 1) y' − n y for y = L_n^β."""
    y = laguerre(n, param)
    x = XPoly.x()
    return -(x * y.diff().diff()) + (x - param.as_alpha() - 1) * y.diff() - y.scale(n)


def classical_norm(n: int, a: float) -> float:
    """∫_0^∞ (L_n^a)^2 x^a e^{−x} dx = Γ(n+a+1)/n!."""
    if a <= -1:
        raise DomainError(f"classical Laguerre norm needs a > -1, got {a}")
    if n < 0:
        raise ValueError("n must be non-negative")
    return float(gamma(n + a + 1)) / math.factorial(n)
