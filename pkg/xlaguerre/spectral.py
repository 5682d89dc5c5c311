"""Endpoint classification, boundary functionals and spectra of the self-adjoint operators.

The limit-point/limit-circle verdicts are closed-form rules in (family, m, α). The numeric
probes here never decide a classification; they corroborate it:

- l2_membership_probe fits the local exponent of x^{2s}W near 0,
- boundary_functional extrapolates a boundary expression to x = 0,
- second_solution_growth_probe follows the reduction-of-order solution towards ∞.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import mpmath
import numpy as np

from .classical import ALPHA, LaguerreIndex, laguerre
from .config import settings
from .core import AlphaPoly, XPoly, substitute_alpha
from .errors import ConvergenceFailure, DomainError
from .exceptional import DegreeSet, Family
from .ode import family_denominator
from .realpoly import RealPoly

logger = logging.getLogger("xlaguerre.spectral")

_BOUNDARY_GRID = tuple(10.0 ** (-k) for k in range(2, 11))
_SCALE_GRID = np.linspace(0.1, 1.0, 91)
_GROWTH_WINDOW = (5.0, 40.0)


class EndpointKind(str, Enum):
    LIMIT_POINT = "LP"
    LIMIT_CIRCLE = "LC"


class Endpoint(str, Enum):
    ZERO = "0"
    INFINITY = "inf"


@dataclass(frozen=True, slots=True)
class EndpointClass:
    endpoint: Endpoint
    kind: EndpointKind

    def __str__(self) -> str:
        return f"{self.kind.value}@{self.endpoint.value}"


@dataclass(frozen=True, slots=True)
class DeficiencyIndex:
    plus: int
    minus: int

    def __post_init__(self) -> None:
        if (self.plus, self.minus) not in ((0, 0), (1, 1)):
            raise ValueError(f"deficiency index ({self.plus},{self.minus}) does not occur here")

    def __str__(self) -> str:
        return f"({self.plus},{self.minus})"


class BoundaryKind(str, Enum):
    NONE = "none"
    X_POWER_DERIVATIVE = "xToAlphaPlusOneDerivative"
    XFPRIME_PLUS_ALPHA_F = "xfPrimePlusAlphaF"


@dataclass(frozen=True, slots=True)
class BoundaryCondition:
    kind: BoundaryKind

    @property
    def text(self) -> str:
        return boundary_condition_text(self.kind)


class OperatorTag(str, Enum):
    T_I = "T_I"
    T_II = "T_II"
    T_III = "T_III"
    S_I = "S_I"

    @property
    def family(self) -> Family:
        return _OPERATOR_FAMILY[self]

    @classmethod
    def parse(cls, value: OperatorTag | str) -> OperatorTag:
        if isinstance(value, OperatorTag):
            return value
        key = str(value).strip().upper().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown operator {value!r}; expected one of T_I, T_II, T_III, S_I") from None


_OPERATOR_FAMILY = {
    OperatorTag.T_I: Family.TYPE_I,
    OperatorTag.T_II: Family.TYPE_II,
    OperatorTag.T_III: Family.TYPE_III,
    OperatorTag.S_I: Family.TYPE_I,
}


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def _limit_circle_at_zero(family: Family, m: int, a: float) -> bool:
    if family is Family.TYPE_I:
        return 0 < a < 1
    if family is Family.TYPE_II:
        return (m == 0 and -1 < a < 1) or (m == 1 and 0 < a < 1)
    if family is Family.TYPE_III:
        return True
    return -1 < a < 1


def classify(family: Family | str, m: int, a: float) -> tuple[EndpointClass, EndpointClass, DeficiencyIndex]:
    """(class at 0, class at ∞, deficiency index) of the family's expression at α = a."""
    family = Family.parse(family)
    family.check_alpha(m, a)
    if a == 0:
        raise DomainError("indicial roots coincide at a=0; no classification")
    lc = _limit_circle_at_zero(family, m, a)
    zero = EndpointClass(Endpoint.ZERO, EndpointKind.LIMIT_CIRCLE if lc else EndpointKind.LIMIT_POINT)
    infinity = EndpointClass(Endpoint.INFINITY, EndpointKind.LIMIT_POINT)
    deficiency = DeficiencyIndex(1, 1) if lc else DeficiencyIndex(0, 0)
    logger.debug("classified", extra={"family": family.value, "m": m, "a": a, "zero": str(zero)})
    return zero, infinity, deficiency


@dataclass(frozen=True, slots=True)
class IndicialRoots:
    """Roots of r(r + α) = 0, the exponents of the solutions 1 and x^{−α} at 0."""

    first: AlphaPoly
    second: AlphaPoly

    def at(self, a: float) -> tuple[float, float]:
        if a == 0:
            raise DomainError("indicial roots coincide at a=0")
        return float(self.first(a)), float(self.second(a))


def frobenius_indicial(family: Family | str = Family.CLASSICAL) -> IndicialRoots:
    Family.parse(family)
    return IndicialRoots(AlphaPoly(), AlphaPoly.linear(-1, 0))


def l2_local_exponent(family: Family | str, m: int, a: float, s: float, x_star: float = 1.0) -> float:
    """Fitted exponent e in x^{2s}W(x) ~ x^e near 0 from geometric increments of ∫_ε^{x*}.

    Successive increments over [10^{−k−1}x*, 10^{−k}x*] shrink by 10^{−(e+1)}.
    """
    family = Family.parse(family)
    family.check_alpha(m, a)
    if not 0 < x_star <= 1:
        raise ValueError("x_star must lie in (0, 1]")
    lpoly = substitute_alpha(family_denominator(family, m), a, "exact")
    with mpmath.workdps(settings.probe_dps):
        lc = lpoly.mp_coeffs()

        def integrand(x):
            lx = mpmath.polyval(lc, x)
            return mpmath.power(x, 2 * s + a) * mpmath.exp(-x) / (lx * lx)

        cuts = [mpmath.mpf(x_star) * mpmath.mpf(10) ** (-k) for k in range(6, 9)]
        first = mpmath.quad(integrand, [cuts[1], cuts[0]])
        second = mpmath.quad(integrand, [cuts[2], cuts[1]])
        return float(-mpmath.log10(second / first)) - 1


def l2_membership_probe(family: Family | str, m: int, a: float, s: float, x_star: float = 1.0) -> bool:
    """Whether x^s lies in L²((0, x*); W): the exponent 2s + a against −1, corroborated numerically."""
    exponent = 2 * s + a
    fitted = l2_local_exponent(family, m, a, s, x_star)
    if abs(fitted - exponent) > 0.05:
        logger.warning("l2_probe_disagreement", extra={"exponent": exponent, "fitted": fitted, "a": a, "s": s})
    return exponent > -1


# ---------------------------------------------------------------------------
# Boundary functionals
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PowerTimesPoly:
    """f(x) = x^power · p(x) for x > 0."""

    power: float
    poly: RealPoly

    @classmethod
    def monomial(cls, power: float) -> PowerTimesPoly:
        return cls(power, RealPoly.from_floats([1.0]))

    @classmethod
    def of(cls, poly: RealPoly) -> PowerTimesPoly:
        return cls(0.0, poly)

    def __call__(self, x):
        return np.power(x, self.power) * self.poly(x)

    def derivative(self, x):
        dp = self.poly.derivative()
        return np.power(x, self.power - 1) * (self.power * self.poly(x) + x * dp(x))

    def scale(self) -> float:
        """max(|f|, |f'|) on [0.1, 1]."""
        return float(max(np.max(np.abs(self(_SCALE_GRID))), np.max(np.abs(self.derivative(_SCALE_GRID)))))


def _extrapolate_to_zero(values: Sequence[float]) -> float:
    """Aitken's Δ² on the last three samples of a sequence taken on a geometric grid."""
    v0, v1, v2 = values[-3:]
    d0, d1 = v1 - v0, v2 - v1
    size = max(abs(v) for v in values[-3:])
    tiny = 1e-14 * max(size, 1e-300)
    if abs(d1) <= tiny:
        return v2
    if abs(d1) >= abs(d0) * (1 - 1e-6):
        raise ConvergenceFailure(f"boundary values do not settle: last differences {d0:.3e}, {d1:.3e}")
    return v2 - d1 * d1 / (d1 - d0)


def boundary_condition_text(kind: BoundaryKind | str) -> str:
    kind = BoundaryKind(kind)
    if kind is BoundaryKind.X_POWER_DERIVATIVE:
        return "lim x^{a+1} f' = 0"
    if kind is BoundaryKind.XFPRIME_PLUS_ALPHA_F:
        return "lim (x f' + a f) = 0"
    return "none"


@dataclass
class BoundaryResult:
    kind: BoundaryKind
    limit: float
    scale: float
    threshold: float
    samples: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return abs(self.limit) < self.threshold


def boundary_functional(
    kind: BoundaryKind | str,
    a: float,
    f: PowerTimesPoly,
    grid: Sequence[float] | None = None,
) -> BoundaryResult:
    """Extrapolated x → 0⁺ limit of the boundary expression, passing below threshold · scale(f)."""
    kind = BoundaryKind(kind)
    if kind is BoundaryKind.NONE:
        raise ValueError("no boundary expression for kind 'none'")
    xs = np.asarray(grid if grid is not None else _BOUNDARY_GRID, dtype=float)
    if len(xs) < 3:
        raise ValueError("boundary grid needs at least three points")
    if kind is BoundaryKind.X_POWER_DERIVATIVE:
        samples = np.power(xs, a + 1) * f.derivative(xs)
    else:
        samples = xs * f.derivative(xs) + a * f(xs)
    values = [float(v) for v in samples]
    limit = _extrapolate_to_zero(values)
    scale = f.scale()
    result = BoundaryResult(kind, limit, scale, settings.boundary_threshold * scale, values)
    logger.debug("boundary_functional", extra={"kind": kind.value, "limit": limit, "passed": result.passed})
    return result


def sesquilinear_form(
    family: Family | str, m: int, a: float, f: PowerTimesPoly, g: PowerTimesPoly, x: float
) -> float:
    """[f, g](x) = x^{α+1} e^{−x} / L(x)² · (f g' − f' g) for real f, g."""
    family = Family.parse(family)
    if x <= 0:
        raise DomainError("the sesquilinear form is evaluated on x > 0")
    lval = float(substitute_alpha(family_denominator(family, m), a, "double")(x))
    flux = x ** (a + 1) * math.exp(-x) / lval**2
    return float(flux * (f(x) * g.derivative(x) - f.derivative(x) * g(x)))


def sesquilinear_limit(
    family: Family | str, m: int, a: float, f: PowerTimesPoly, g: PowerTimesPoly, grid: Sequence[float] | None = None
) -> float:
    """[f, g](0⁺) by the same extrapolation as the boundary functionals."""
    xs = grid if grid is not None else _BOUNDARY_GRID
    return _extrapolate_to_zero([sesquilinear_form(family, m, a, f, g, float(x)) for x in xs])


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------


@dataclass
class SpectrumSpec:
    operator: OperatorTag
    m: int
    a: float
    description: str
    eigenvalues: list[tuple[int, float]]

    @property
    def values(self) -> list[float]:
        return [value for _, value in self.eigenvalues]

    @property
    def degrees(self) -> list[int]:
        return [n for n, _ in self.eigenvalues]


def _check_operator_alpha(op: OperatorTag, m: int, a: float) -> None:
    if m < op.family.min_m():
        raise DomainError(f"{op.value} needs m >= {op.family.min_m()}, got m={m}")
    op.family.check_alpha(m, a)
    if op is OperatorTag.S_I and not 0 < a < 1:
        raise DomainError(f"S_I is defined for 0 < a < 1, got a={a}")


def spectrum(op: OperatorTag | str, m: int, a: float, cutoff: int) -> SpectrumSpec:
    """The lowest `cutoff` eigenvalues with the degree of their polynomial part."""
    op = OperatorTag.parse(op)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    _check_operator_alpha(op, m, a)
    if op in (OperatorTag.T_I, OperatorTag.T_II):
        degrees = DegreeSet(op.family, m).first(cutoff)
        pairs = [(n, float(n - m)) for n in degrees]
        description = "n - m for n >= m, i.e. 0, 1, 2, ..."
    elif op is OperatorTag.T_III:
        degrees = DegreeSet(Family.TYPE_III, m).first(cutoff)
        pairs = [(n, n - m + a) for n in degrees]
        description = f"n - m + a for n in {{0, {m + 1}, {m + 2}, ...}}"
    else:
        degrees = DegreeSet(Family.TYPE_III, m).first(cutoff)
        pairs = [(n, n - m - a) for n in degrees]
        description = f"n - m - a for n in {{0, {m + 1}, {m + 2}, ...}}, eigenfunctions x^(-a) times Type III at -a"
    return SpectrumSpec(op, m, a, description, pairs)


@dataclass
class StateAddingComparison:
    t_spectrum: SpectrumSpec
    s_spectrum: SpectrumSpec

    @property
    def added(self) -> float:
        return self.s_spectrum.values[0]

    @property
    def below(self) -> bool:
        return self.added < min(self.t_spectrum.values)

    @property
    def shift(self) -> list[float]:
        """S_I eigenvalues past the added state minus the matching T_I eigenvalues (all −a)."""
        rest = self.s_spectrum.values[1:]
        return [s - t for s, t in zip(rest, self.t_spectrum.values[1:], strict=False)]


def state_adding_comparison(m: int, a: float, cutoff: int) -> StateAddingComparison:
    """σ(T_I) next to σ(S_I) = {−m−a} ∪ {j+1−a}."""
    return StateAddingComparison(spectrum(OperatorTag.T_I, m, a, cutoff), spectrum(OperatorTag.S_I, m, a, cutoff))


# ---------------------------------------------------------------------------
# Growth of the second solution at ∞
# ---------------------------------------------------------------------------


def _first_solution(family: Family, m: int) -> XPoly:
    if family is Family.TYPE_I:
        return laguerre(m, ALPHA, reflected=True)
    if family is Family.TYPE_II:
        return laguerre(m, LaguerreIndex.minus(-2))
    return XPoly.const(1)


@dataclass
class GrowthProbe:
    family: Family
    m: int
    a: float
    xs: list[float]
    second_weighted: list[float]
    first_weighted: list[float]

    @property
    def passed(self) -> bool:
        """|y₂|²W grows by at least e^{Δx/2} between consecutive points."""
        pairs = zip(self.xs, self.xs[1:], strict=False)
        vals = zip(self.second_weighted, self.second_weighted[1:], strict=False)
        return all(v1 >= v0 * math.exp((x1 - x0) / 2) for (x0, x1), (v0, v1) in zip(pairs, vals, strict=False))

    @property
    def first_solution_decays(self) -> bool:
        return all(v1 < v0 for v0, v1 in zip(self.first_weighted, self.first_weighted[1:], strict=False))


def second_solution_growth_probe(family: Family | str, m: int, a: float, xs: Sequence[float]) -> GrowthProbe:
    """y₂ = y₁ ∫_1^x e^t L(t)² / (t^{α+1} y₁(t)²) dt, with y₁ the polynomial solution at the bottom."""
    family = Family.parse(family)
    family.check_alpha(m, a)
    xs = [float(x) for x in xs]
    if len(xs) < 2 or any(x1 <= x0 for x0, x1 in zip(xs, xs[1:], strict=False)):
        raise ValueError("xs must be increasing with at least two points")
    if xs[0] < _GROWTH_WINDOW[0] or xs[-1] > _GROWTH_WINDOW[1]:
        raise ValueError(f"xs must lie in [{_GROWTH_WINDOW[0]:g}, {_GROWTH_WINDOW[1]:g}]")
    lpoly = substitute_alpha(family_denominator(family, m), a, "exact")
    ypoly = substitute_alpha(_first_solution(family, m), a, "exact")
    second, first = [], []
    with mpmath.workdps(settings.probe_dps):
        lc, yc = lpoly.mp_coeffs(), ypoly.mp_coeffs()

        def integrand(t):
            ratio = mpmath.polyval(lc, t) / mpmath.polyval(yc, t)
            return mpmath.exp(t) * ratio * ratio / mpmath.power(t, a + 1)

        total, lower = mpmath.mpf(0), mpmath.mpf(1)
        for x in xs:
            piece, err = mpmath.quad(integrand, mpmath.linspace(lower, x, 8), error=True)
            if not mpmath.isfinite(piece) or abs(err) > 1e-6 * abs(piece):
                raise ConvergenceFailure(f"reduction-of-order integral unresolved at x={x}")
            total, lower = total + piece, mpmath.mpf(x)
            y1 = mpmath.polyval(yc, x)
            lx = mpmath.polyval(lc, x)
            weight = mpmath.power(x, a) * mpmath.exp(-x) / (lx * lx)
            second.append(float((y1 * total) ** 2 * weight))
            first.append(float(y1 * y1 * weight))
    probe = GrowthProbe(family, m, a, xs, second, first)
    logger.debug("growth_probe", extra={"family": family.value, "m": m, "a": a, "passed": probe.passed})
    return probe


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@dataclass
class SpectralReport:
    operator: OperatorTag
    m: int
    a: float
    at_zero: EndpointClass
    at_infinity: EndpointClass
    deficiency: DeficiencyIndex
    indicial: tuple[float, float]
    boundary: BoundaryCondition
    spectrum: SpectrumSpec

    def as_dict(self) -> dict:
        return {
            "operator": self.operator.value,
            "family": self.operator.family.value,
            "m": self.m,
            "alpha": self.a,
            "zero": self.at_zero.kind.value,
            "infinity": self.at_infinity.kind.value,
            "deficiency": str(self.deficiency),
            "indicial": list(self.indicial),
            "boundary_condition": self.boundary.text,
            "spectrum": [{"n": n, "eigenvalue": value} for n, value in self.spectrum.eigenvalues],
        }


def spectral_report(op: OperatorTag | str, m: int, a: float, cutoff: int = 5) -> SpectralReport:
    op = OperatorTag.parse(op)
    _check_operator_alpha(op, m, a)
    zero, infinity, deficiency = classify(op.family, m, a)
    if op is OperatorTag.S_I:
        kind = BoundaryKind.XFPRIME_PLUS_ALPHA_F
    elif deficiency.plus:
        kind = BoundaryKind.X_POWER_DERIVATIVE
    else:
        kind = BoundaryKind.NONE
    return SpectralReport(
        operator=op,
        m=m,
        a=a,
        at_zero=zero,
        at_infinity=infinity,
        deficiency=deficiency,
        indicial=frobenius_indicial(op.family).at(a),
        boundary=BoundaryCondition(kind),
        spectrum=spectrum(op, m, a, cutoff),
    )
