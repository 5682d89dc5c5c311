"""Second-order differential expressions and their exact identities.

An expression is a2·y'' + a1·y' + a0·y with RatFunc coefficients. Every exceptional
expression has a2 = −x and coefficients whose denominators divide the family's Laguerre
factor L, so identities are checked after multiplying through by L.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .classical import ALPHA, LaguerreIndex, laguerre
from .core import AlphaPoly, RatFunc, XPoly, substitute_alpha
from .errors import DomainError
from .exceptional import (
    DegreeSet,
    Family,
    FirstOrderOp,
    apply_first_order,
    exceptional_polynomial,
    xlag3,
)
from .memo import MemoTable

logger = logging.getLogger("xlaguerre.ode")

_NEG_ALPHA = AlphaPoly.linear(-1, 0)


@dataclass(frozen=True, slots=True)
class ExpressionSpec:
    """a2·y'' + a1·y' + a0·y with eigenvalue λ(n) = n + eigen_offset.

    denominator is the polynomial every coefficient denominator divides (1 for the
    classical expression); eigen_offset is None when no eigenvalue map is attached.
    """

    a2: RatFunc
    a1: RatFunc
    a0: RatFunc
    eigen_offset: AlphaPoly | None
    family: Family = Family.CLASSICAL
    m: int = 0
    denominator: XPoly = field(default_factory=lambda: XPoly.const(1))
    name: str = ""

    def eigenvalue(self, n: int) -> AlphaPoly:
        if self.eigen_offset is None:
            raise ValueError(f"expression {self.name or self.family.label} carries no eigenvalue map")
        if self.family is not Family.CLASSICAL:
            DegreeSet(self.family, self.m).check(n)
        return self.eigen_offset + n

    def cleared(self) -> tuple[XPoly, XPoly, XPoly]:
        """(a2, a1, a0) multiplied by the denominator; all polynomials."""
        d = self.denominator
        return self.a2.cleared(d), self.a1.cleared(d), self.a0.cleared(d)

    def negated(self) -> ExpressionSpec:
        offset = -self.eigen_offset if self.eigen_offset is not None else None
        return ExpressionSpec(
            -self.a2, -self.a1, -self.a0, offset, self.family, self.m, self.denominator, f"-{self.name}"
        )

    def map_alpha(self, inner: AlphaPoly) -> ExpressionSpec:
        offset = self.eigen_offset.compose(inner) if self.eigen_offset is not None else None
        return ExpressionSpec(
            self.a2.map_alpha(inner),
            self.a1.map_alpha(inner),
            self.a0.map_alpha(inner),
            offset,
            self.family,
            self.m,
            self.denominator.map_alpha(inner),
            self.name,
        )

    def same_coefficients(self, other: ExpressionSpec) -> bool:
        return self.a2 == other.a2 and self.a1 == other.a1 and self.a0 == other.a0


_EXPRESSIONS: MemoTable[ExpressionSpec] = MemoTable("expressions")


def family_denominator(family: Family, m: int) -> XPoly:
    """The Laguerre factor L in the family's coefficients and weight."""
    if family is Family.TYPE_I:
        return laguerre(m, LaguerreIndex.plus(-1), reflected=True)
    if family is Family.TYPE_II:
        return laguerre(m, LaguerreIndex.minus(-1))
    if family is Family.TYPE_III:
        return laguerre(m, LaguerreIndex.minus(-1), reflected=True)
    return XPoly.const(1)


def _build_expression(family: Family, m: int, shifted: bool) -> ExpressionSpec:
    x = XPoly.x()
    alpha = AlphaPoly.alpha()
    a2 = RatFunc.poly(-x)
    base_a1 = x - alpha - 1
    if family is Family.CLASSICAL:
        return ExpressionSpec(a2, RatFunc.poly(base_a1), RatFunc.poly(0), AlphaPoly(), family, m, name="classical")
    den = family_denominator(family, m)
    log_term = RatFunc.of(x * den.diff() * 2, den)
    a1 = log_term + base_a1
    if family is Family.TYPE_I:
        a0 = RatFunc.of(den.diff().scale(alpha * 2), den) - m
        offset = AlphaPoly.const(-m)
    elif family is Family.TYPE_II:
        a0 = RatFunc.poly(m) - log_term
        offset = AlphaPoly.const(-m)
    else:
        a0 = RatFunc.poly(alpha - m)
        offset = alpha - m
        if shifted:
            a0 = a0 - (alpha + 1)
            offset = AlphaPoly.const(-m - 1)
    name = f"{family.label}, m={m}" + (" (shifted)" if shifted else "")
    return ExpressionSpec(a2, a1, a0, offset, family, m, den, name)


def expression_for(family: Family | str, m: int = 0, shifted: bool = False) -> ExpressionSpec:
    """ℓ^α, ℓ_m^{I,α}, ℓ_m^{II,α} or ℓ_m^{III,α}.

    shifted selects the alternative Type III normalization ℓ^{III,α} − (α+1), whose
    eigenvalues are n − m − 1.
    """
    family = Family.parse(family)
    if shifted and family is not Family.TYPE_III:
        raise ValueError("only the Type III expression has a shifted convention")
    if family is not Family.CLASSICAL and m < family.min_m():
        raise ValueError(f"{family.label} needs m >= {family.min_m()}, got {m}")
    key = (family, 0 if family is Family.CLASSICAL else m, shifted)
    return _EXPRESSIONS.get_or_build(key, lambda: _build_expression(family, key[1], shifted))


def apply_expression(e: ExpressionSpec, p: XPoly | RatFunc) -> RatFunc:
    y = RatFunc.poly(p) if isinstance(p, XPoly) else p
    dy = y.diff()
    return e.a2 * dy.diff() + e.a1 * dy + e.a0 * y


def _apply_cleared(e: ExpressionSpec, p: XPoly) -> XPoly:
    c2, c1, c0 = e.cleared()
    dp = p.diff()
    return c2 * dp.diff() + c1 * dp + c0 * p


def eigen_residual(family: Family | str, m: int, n: int, shifted: bool = False) -> XPoly:
    """L·(ℓ[p_n] − λ(n)·p_n); the zero polynomial when p_n is an eigenfunction."""
    e = expression_for(family, m, shifted)
    lam = e.eigenvalue(n)
    p = exceptional_polynomial(e.family, m, n)
    return _apply_cleared(e, p) - (e.denominator * p).scale(lam)


# ---------------------------------------------------------------------------
# Factorizations and the gauge transformation
# ---------------------------------------------------------------------------


def _monomials(degree: int) -> list[XPoly]:
    if degree < 0:
        raise ValueError("basis degree must be non-negative")
    return [XPoly.monomial(j) for j in range(degree + 1)]


def _factorization_pairs(family: Family, m: int):
    """Per family: (inner-first op pair, constant, expression) for −ℓ^α = B∘A + c and −ℓ_m = A∘B + c'."""
    alpha = AlphaPoly.alpha()
    classical = expression_for(Family.CLASSICAL)
    exceptional = expression_for(family, m)
    if family is Family.TYPE_I:
        return [
            ((FirstOrderOp(family, "A", m), FirstOrderOp(family, "B", m)), alpha + (m + 1), classical),
            ((FirstOrderOp(family, "B", m, -1), FirstOrderOp(family, "A", m, -1)), alpha + m, exceptional),
        ]
    if family is Family.TYPE_II:
        return [
            ((FirstOrderOp(family, "A", m), FirstOrderOp(family, "B", m)), alpha - m, classical),
            ((FirstOrderOp(family, "B", m, 1), FirstOrderOp(family, "A", m, 1)), alpha + (1 - m), exceptional),
        ]
    if family is Family.TYPE_III:
        return [
            ((FirstOrderOp(family, "A", m), FirstOrderOp(family, "B", m)), AlphaPoly.const(m + 1), classical),
            (
                (FirstOrderOp(family, "B", m, 1), FirstOrderOp(family, "A", m, 1)),
                AlphaPoly.const(m) - alpha,
                exceptional,
            ),
        ]
    raise ValueError("classical Laguerre has no exceptional factorization")


def factorization_identity_check(family: Family | str, m: int, degree: int) -> bool:
    """Both factorization identities of the family on x^0 … x^degree.

    Type I:   −ℓ^α = B^{I,α}A^{I,α} + α+m+1,     −ℓ^{I,α} = A^{I,α−1}B^{I,α−1} + α+m
    Type II:  −ℓ^α = B^{II,α}A^{II,α} + α−m,      −ℓ^{II,α} = A^{II,α+1}B^{II,α+1} + α+1−m
    Type III: −ℓ^α = B^{III,α}A^{III,α} + m+1,    −ℓ^{III,α} = A^{III,α+1}B^{III,α+1} + m−α
    """
    family = Family.parse(family)
    if degree < 2:
        raise ValueError("basis degree must be at least 2")
    for (first, second), const, expr in _factorization_pairs(family, m):
        for y in _monomials(degree):
            composed = apply_first_order(second, apply_first_order(first, y))
            if not isinstance(composed, RatFunc):
                composed = RatFunc.poly(composed)
            if composed + RatFunc.poly(y.scale(const)) != -apply_expression(expr, y):
                logger.warning(
                    "factorization_identity_failed",
                    extra={"family": family.value, "m": m, "power": y.degree, "first": str(first)},
                )
                return False
    return True


def conjugate_by_power(e: ExpressionSpec, s: AlphaPoly | int) -> ExpressionSpec:
    """x^{−s} ∘ ℓ ∘ x^{s} for a symbolic exponent s.

    With z = x^s·y:  a1 → a1 + 2·a2·s/x  and  a0 → a0 + a1·s/x + a2·s(s−1)/x².
    """
    s = AlphaPoly.lift(s)
    x = XPoly.x()
    over_x = RatFunc.of(XPoly.const(s), x)
    a1 = e.a1 + e.a2 * over_x * 2
    a0 = e.a0 + e.a1 * over_x + e.a2 * RatFunc.of(XPoly.const(s * (s - 1)), x * x)
    den = e.denominator * x * x if not s.is_zero else e.denominator
    return ExpressionSpec(e.a2, a1, a0, e.eigen_offset, e.family, e.m, den, f"conj({e.name})")


def _type1_conjugated(m: int) -> ExpressionSpec:
    return conjugate_by_power(expression_for(Family.TYPE_I, m), _NEG_ALPHA)


def gauge_check(m: int, degree: int) -> bool:
    """x^α·ℓ_m^{I,α}[x^{−α}y] = ℓ_m^{III,−α}[y] for y = x^0 … x^degree, and coefficientwise."""
    if degree < 2:
        raise ValueError("basis degree must be at least 2")
    conj = _type1_conjugated(m)
    target = expression_for(Family.TYPE_III, m).map_alpha(_NEG_ALPHA)
    if not conj.same_coefficients(target):
        logger.warning("gauge_coefficients_differ", extra={"m": m})
        return False
    return all(apply_expression(conj, y) == apply_expression(target, y) for y in _monomials(degree))


def s_operator_eigen_check(m: int, n: int) -> bool:
    """ℓ_m^{I,α}[x^{−α}q] = (n−m−α)·x^{−α}q with q = L^{III}_{m,n} at parameter −α."""
    q = xlag3(m, n).map_alpha(_NEG_ALPHA)
    lhs = apply_expression(_type1_conjugated(m), q)
    lam = AlphaPoly.linear(-1, n - m)
    return lhs == RatFunc.poly(q.scale(lam))


def ground_state_check(m: int) -> bool:
    """ℓ_m^{I,α}[x^{−α}] = (−m−α)·x^{−α} and ℓ_m^{III,α}[1] = (−m+α)."""
    one = XPoly.const(1)
    type1 = apply_expression(_type1_conjugated(m), one) == RatFunc.poly(AlphaPoly.linear(-1, -m))
    type3 = apply_expression(expression_for(Family.TYPE_III, m), one) == RatFunc.poly(AlphaPoly.linear(1, -m))
    return type1 and type3


# ---------------------------------------------------------------------------
# Quasi-rational seeds and the Darboux partner
# ---------------------------------------------------------------------------


class SeedTag(str, Enum):
    PHI0 = "phi0"
    PHI1 = "phi1"
    PHI2 = "phi2"
    PHI3 = "phi3"


@dataclass(frozen=True, slots=True)
class SeedFunction:
    """φ = x^power · e^{rate·x} · poly, with its exact log-derivative and eigenvalue.

    gauge and family name the factorization the seed generates; partner_shift is the
    α-shift at which the family's expression reappears.
    """

    tag: SeedTag
    m: int
    log_derivative: RatFunc
    eigenvalue: AlphaPoly
    poly: XPoly
    gauge: XPoly | None
    family: Family
    partner_shift: int = 0
    partner_a0_offset: AlphaPoly = field(default_factory=AlphaPoly)


def _log_derivative(power: AlphaPoly, rate: int, poly: XPoly) -> RatFunc:
    w = RatFunc.of(poly.diff(), poly) + rate
    if not power.is_zero:
        w = w + RatFunc.of(XPoly.const(power), XPoly.x())
    return w


def seed_function(tag: SeedTag | str, m: int) -> SeedFunction:
    """φ0 = L_m^α(x), φ1 = e^x L_m^α(−x), φ2 = x^{−α} L_m^{−α}(x), φ3 = x^{−α} e^x L_m^{−α}(−x)."""
    tag = SeedTag(tag)
    if m < 0:
        raise ValueError("m must be non-negative")
    x = XPoly.x()
    alpha = AlphaPoly.alpha()
    if tag is SeedTag.PHI0:
        poly = laguerre(m, ALPHA)
        w = _log_derivative(AlphaPoly(), 0, poly)
        return SeedFunction(tag, m, w, AlphaPoly.const(m), poly, None, Family.CLASSICAL)
    if tag is SeedTag.PHI1:
        poly = laguerre(m, ALPHA, reflected=True)
        return SeedFunction(
            tag, m, _log_derivative(AlphaPoly(), 1, poly), AlphaPoly.linear(-1, -1 - m), poly, poly, Family.TYPE_I, 1
        )
    if tag is SeedTag.PHI2:
        poly = laguerre(m, LaguerreIndex.minus())
        return SeedFunction(
            tag, m, _log_derivative(-alpha, 0, poly), AlphaPoly.linear(-1, m), poly, x * poly, Family.TYPE_II, -1
        )
    poly = laguerre(m, LaguerreIndex.minus(), reflected=True)
    return SeedFunction(
        tag,
        m,
        _log_derivative(-alpha, 1, poly),
        AlphaPoly.const(-m - 1),
        poly,
        x * poly,
        Family.TYPE_III,
        -1,
        -alpha,
    )


def seed_eigenvalue_check(seed: SeedFunction) -> bool:
    """ℓ^α[φ] = λφ in log-derivative form: −x(w' + w²) + (x − α − 1)·w = λ."""
    w = seed.log_derivative
    x = XPoly.x()
    lhs = -(w.diff() + w * w) * x + w * (x - AlphaPoly.alpha() - 1)
    return lhs == RatFunc.poly(seed.eigenvalue)


def darboux_partner(seed: SeedFunction, gauge: RatFunc | XPoly, lam: AlphaPoly | None = None) -> ExpressionSpec:
    """The partner x·y'' + q̂·y' + r̂·y of the factorization −ℓ^α = BA − λ.

        q̂ = 2 + α − x − 2x·b'/b
        ŵ = −φ'/φ + b'/b − (1 + α − x)/x
        r̂ = −x(ŵ' + ŵ²) − q̂·ŵ − λ

    so that the partner equals AB − λ; λ defaults to the seed eigenvalue.
    """
    b = RatFunc.poly(gauge) if isinstance(gauge, XPoly) else gauge
    lam = seed.eigenvalue if lam is None else lam
    x = XPoly.x()
    alpha = AlphaPoly.alpha()
    log_b = b.diff() / b
    q_hat = RatFunc.poly(XPoly.const(alpha + 2) - x) - log_b * x * 2
    w_hat = -seed.log_derivative + log_b - RatFunc.of(XPoly.const(alpha + 1) - x, x)
    r_hat = -(w_hat.diff() + w_hat * w_hat) * x - q_hat * w_hat - lam
    return ExpressionSpec(
        RatFunc.poly(x), q_hat, r_hat, None, seed.family, seed.m, XPoly.const(1), f"partner({seed.tag.value})"
    )


@dataclass(frozen=True)
class DarbouxComparison:
    family: Family
    m: int
    seed: SeedTag
    a2_match: bool
    a1_match: bool
    a0_offset: AlphaPoly | None
    expected_offset: AlphaPoly

    @property
    def passed(self) -> bool:
        return self.a2_match and self.a1_match and self.a0_offset == self.expected_offset


_FAMILY_SEEDS = {Family.TYPE_I: SeedTag.PHI1, Family.TYPE_II: SeedTag.PHI2, Family.TYPE_III: SeedTag.PHI3}


def darboux_family_check(family: Family | str, m: int) -> DarbouxComparison:
    """Negated partner of the family's seed and gauge against the family expression.

    Types I and II reappear exactly at α+1 and α−1; Type III reappears at α−1 with a0
    lowered by α, the gap between its two normalizations.
    """
    family = Family.parse(family)
    if family not in _FAMILY_SEEDS:
        raise ValueError("the classical expression has no Darboux family check")
    seed = seed_function(_FAMILY_SEEDS[family], m)
    partner = darboux_partner(seed, seed.gauge).negated()
    target = expression_for(family, m).map_alpha(AlphaPoly.linear(1, seed.partner_shift))
    gap = partner.a0 - target.a0
    offset = gap.as_poly().leading if gap.is_polynomial and gap.as_poly().degree <= 0 else None
    result = DarbouxComparison(
        family=family,
        m=m,
        seed=seed.tag,
        a2_match=partner.a2 == target.a2,
        a1_match=partner.a1 == target.a1,
        a0_offset=offset,
        expected_offset=seed.partner_a0_offset,
    )
    logger.debug("darboux_family_checked", extra={"family": family.value, "m": m, "passed": result.passed})
    return result


def adjoint_relation_check(family: Family | str, m: int) -> bool:
    """A^{·,α}[y] = b·(y' − (φ'/φ)·y) for the family's seed φ and gauge b."""
    family = Family.parse(family)
    if family not in _FAMILY_SEEDS:
        raise ValueError("the classical expression has no first-order factorization")
    seed = seed_function(_FAMILY_SEEDS[family], m)
    c1, c0, _ = FirstOrderOp(family, "A", m).coefficients()
    b = seed.gauge
    return c1 == b and RatFunc.poly(c0) == -(seed.log_derivative * b)


# ---------------------------------------------------------------------------
# Weights and symmetric forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class WeightSpec:
    """W(x) = x^α e^{−x} / L(x)²."""

    family: Family
    m: int
    laguerre_factor: XPoly

    @property
    def denominator(self) -> XPoly:
        return self.laguerre_factor * self.laguerre_factor

    def __call__(self, a: float, x):
        self.family.check_alpha(self.m, a)
        xs = np.asarray(x, dtype=float)
        if np.any(xs <= 0):
            raise DomainError("weights are evaluated on x > 0")
        den = substitute_alpha(self.laguerre_factor, a, "double")(xs)
        return xs**a * np.exp(-xs) / den**2


def weight_spec(family: Family | str, m: int = 0) -> WeightSpec:
    family = Family.parse(family)
    return WeightSpec(family, m, family_denominator(family, m))


def weight_eval(family: Family | str, m: int, a: float, x: float) -> float:
    return float(weight_spec(family, m)(a, x))


def ratfunc_eval(r: RatFunc, a: float, x):
    return substitute_alpha(r.num, a, "double")(x) / substitute_alpha(r.den, a, "double")(x)


def _zero_order_weighted(family: Family, m: int, a: float, x: float, lval: float, dl: float) -> float:
    """The zero-order term of the symmetric form, already multiplied by the weight."""
    base = x**a * math.exp(-x) / lval**2
    if family is Family.TYPE_I:
        return 2 * a * base * dl / lval - m * base
    if family is Family.TYPE_II:
        return m * base - 2 * x ** (a + 1) * math.exp(-x) * dl / lval**3
    if family is Family.TYPE_III:
        return (a - m) * base
    return 0.0


def _symmetric_value(family: Family, m: int, a: float, x: float, y: XPoly) -> float:
    den = family_denominator(family, m)
    lval = float(substitute_alpha(den, a, "double")(x))
    dl = float(substitute_alpha(den.diff(), a, "double")(x))
    yr = substitute_alpha(y, a, "double")
    dy = float(yr.derivative()(x)) if y.degree > 0 else 0.0
    d2y = float(yr.derivative().derivative()(x)) if y.degree > 1 else 0.0
    weight = x**a * math.exp(-x) / lval**2
    pw = x * weight
    dpw = pw * ((a + 1) / x - 1 - 2 * dl / lval)
    flux_derivative = dpw * dy + pw * d2y
    return (-flux_derivative + _zero_order_weighted(family, m, a, x, lval, dl) * float(yr(x))) / weight


def symmetric_form_check(
    family: Family | str,
    m: int,
    a: float,
    xs: Sequence[float],
    polys: Iterable[XPoly] | None = None,
    rel_tol: float = 1e-10,
) -> bool:
    """(1/W)(−(x^{α+1}e^{−x}/L²·y')' + Q·y) against the expression itself at sample points."""
    family = Family.parse(family)
    family.check_alpha(m, a)
    e = expression_for(family, m)
    if polys is None:
        degrees = DegreeSet(family, m).first(3) if family is not Family.CLASSICAL else [0, 1, 2]
        polys = [XPoly.const(1)] + [exceptional_polynomial(family, m, n) for n in degrees]
    for y in polys:
        direct = apply_expression(e, y)
        for x in xs:
            expected = float(ratfunc_eval(direct, a, x))
            got = _symmetric_value(family, m, a, float(x), y)
            scale = max(1.0, abs(expected))
            if abs(got - expected) > rel_tol * scale:
                logger.warning(
                    "symmetric_form_mismatch",
                    extra={"family": family.value, "m": m, "x": x, "got": got, "expected": expected},
                )
                return False
    return True

