"""Floating-point layer: roots, Bessel zeros, weighted quadrature, norms and root theorems.

Symbolic polynomials reach this module as RealPoly values at a fixed α. Low degrees keep
their exact rational coefficients, so root polishing and sign tests run in extended
precision through mpmath. The large-degree asymptotics never build the symbolic
polynomial: they evaluate the defining Laguerre products by recurrence at the working
precision.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import mpmath
import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.linalg
from scipy import integrate
from scipy.optimize import brentq
from scipy.special import gamma, jv, jvp, roots_genlaguerre

from .classical import classical_norm
from .config import settings
from .core import XPoly, substitute_alpha
from .errors import ConvergenceFailure, DomainError, ToleranceNotMet
from .exceptional import DegreeSet, Family, exceptional_polynomial, xlag3
from .ode import family_denominator
from .realpoly import RealPoly

__all__ = [
    "AsymptoticsTable",
    "GramResult",
    "NormCheck",
    "QuadratureResult",
    "RealPoly",
    "RootReport",
    "RootSet",
    "asymptotics_probe",
    "bessel_zero",
    "classical_norm_check",
    "critical_points_check",
    "family_value",
    "gram_matrix",
    "inner_product",
    "interlacing_check",
    "norm_closed_form",
    "norm_comparison",
    "polynomial_roots",
    "projection_residuals",
    "real_roots",
    "substitute_alpha",
    "type1_root_report",
    "type2_root_report",
]

logger = logging.getLogger("xlaguerre.numerics")


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------


@dataclass
class RootSet:
    real: list[float]
    complex: list[complex] = field(default_factory=list)

    @property
    def positive(self) -> list[float]:
        return [r for r in self.real if r > 0]

    @property
    def negative(self) -> list[float]:
        return [r for r in self.real if r < 0]


def _newton_polish(coeffs: list, z0: complex, tol: float):
    z = mpmath.mpf(z0.real) if z0.imag == 0 else mpmath.mpc(z0)
    for _ in range(80):
        value, slope = mpmath.polyval(coeffs, z, derivative=True)
        if slope == 0:
            raise ConvergenceFailure(f"zero derivative while polishing root near {z0}")
        step = value / slope
        z -= step
        if abs(step) <= tol * max(1, abs(z)):
            return z
    raise ConvergenceFailure(f"Newton polishing did not converge near {z0}")


def polynomial_roots(p: RealPoly, tol: float | None = None) -> RootSet:
    """All roots: balanced companion eigenvalues polished by Newton at settings.polish_dps.

    When polishing coalesces or stalls, the roots come from mpmath.polyroots instead.
    """
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    tol = tol or settings.root_polish_tol
    if p.degree == 1:
        guesses = [complex(-p.coeffs[0] / p.coeffs[1])]
    else:
        guesses = [complex(z) for z in scipy.linalg.eigvals(npoly.polycompanion(p.array))]
    with mpmath.workdps(settings.polish_dps):
        coeffs = p.mp_coeffs()
        try:
            return _split_roots([complex(_newton_polish(coeffs, z0, tol)) for z0 in guesses], tol)
        except ConvergenceFailure as e:
            # high degrees: the monomial companion matrix can hand Newton two guesses for one root
            logger.info("companion_roots_rejected: %s", e)
            try:
                found = mpmath.polyroots(coeffs, maxsteps=400, extraprec=settings.polish_dps)
            except mpmath.libmp.NoConvergence as exc:
                raise ConvergenceFailure(f"polyroots did not converge for degree {p.degree}") from exc
            return _split_roots([complex(z) for z in found], tol)


def _split_roots(roots: list[complex], tol: float) -> RootSet:
    real: list[float] = []
    cplx: list[complex] = []
    for z in roots:
        if abs(z.imag) < settings.root_imag_tol * max(1.0, abs(z)):
            real.append(z.real)
        else:
            cplx.append(z)
    real.sort()
    for left, right in zip(real, real[1:], strict=False):
        if right - left <= 1e2 * tol * max(1.0, abs(left)):
            raise ConvergenceFailure(f"polished roots coalesced near {left}")
    cplx.sort(key=lambda z: (z.real, z.imag))
    for i, z in enumerate(cplx):
        if any(abs(w - z) <= 1e2 * tol * max(1.0, abs(z)) for w in cplx[i + 1 :]):
            raise ConvergenceFailure(f"polished roots coalesced near {z}")
    return RootSet(real, cplx)


def real_roots(p: RealPoly, tol: float | None = None) -> list[float]:
    return polynomial_roots(p, tol).real


def _sign_at(p: RealPoly, x: float) -> int:
    with mpmath.workdps(settings.polish_dps):
        return int(mpmath.sign(p.mp_eval(mpmath.mpf(x))))


def _sign_at_infinity(p: RealPoly, negative: bool) -> int:
    lead = p.exact[-1] if p.exact is not None else p.coeffs[-1]
    sign = 1 if lead > 0 else -1
    return sign * (-1) ** p.degree if negative else sign


def _laguerre_roots(n: int, b: float) -> list[float]:
    if n <= 0:
        return []
    nodes, _ = roots_genlaguerre(n, b)
    return sorted(float(x) for x in nodes)


# ---------------------------------------------------------------------------
# Bessel zeros
# ---------------------------------------------------------------------------


def _mcmahon(a: float, i: int) -> float:
    mu = 4 * a * a
    beta = (i + a / 2 - 0.25) * math.pi
    e = 8 * beta
    return beta - (mu - 1) / e - 4 * (mu - 1) * (7 * mu - 31) / (3 * e**3)


def _count_zeros_below(a: float, x: float) -> int:
    grid = np.linspace(1e-8, x, max(64, int(x * 20)))
    values = jv(a, grid)
    return int(np.count_nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0))


def _bessel_zero_scan(a: float, i: int) -> float:
    upper = max(10.0, (i + abs(a) + 2) * math.pi)
    grid = np.linspace(1e-8, upper, int(upper * 40))
    values = jv(a, grid)
    changes = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]
    if len(changes) < i:
        raise ConvergenceFailure(f"found only {len(changes)} zeros of J_{a} below {upper}")
    k = changes[i - 1]
    return float(brentq(lambda t: jv(a, t), grid[k], grid[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))


def bessel_zero(a: float, i: int) -> float:
    """The i-th positive zero j_{a,i} of J_a: McMahon start, Newton on J_a, scan fallback."""
    if a <= -1:
        raise DomainError(f"Bessel zeros need a > -1, got {a}")
    if i < 1:
        raise ValueError("zero index starts at 1")
    x = _mcmahon(a, i)
    converged = False
    if x > 0:
        for _ in range(50):
            step = jv(a, x) / jvp(a, x)
            x -= step
            if not np.isfinite(x) or x <= 0:
                break
            if abs(step) <= settings.bessel_tol * x:
                converged = True
                break
    if converged and _count_zeros_below(a, x * (1 - 1e-6)) == i - 1:
        return float(x)
    logger.debug("bessel_zero_fallback", extra={"order": a, "index": i})
    return _bessel_zero_scan(a, i)


# ---------------------------------------------------------------------------
# Quadrature on (0, ∞)
# ---------------------------------------------------------------------------


@dataclass
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions: int
    requested: float = 0.0
    converged: bool = True


def _integrate(
    head_integrand: Callable,
    float_integrand: Callable,
    scale: float = 0.0,
    head_factor: float = 1.0,
) -> QuadratureResult:
    """(0,1) by tanh-sinh in mpmath, (1,∞) by QUADPACK's infinite-interval Gauss-Kronrod.

    The head integral is head_factor * ∫_0^1 head_integrand(t) dt.
    """
    with mpmath.workdps(settings.quad_head_dps):
        head, head_err = mpmath.quad(head_integrand, [0, 1], error=True)
    head_value, head_error = float(head) * head_factor, float(head_err) * abs(head_factor)
    out = integrate.quad(
        float_integrand,
        1,
        np.inf,
        epsabs=settings.quad_abs_tol,
        epsrel=settings.quad_rel_tol,
        limit=settings.quad_limit,
        full_output=1,
    )
    tail_value, tail_error, info = out[0], out[1], out[2]
    if len(out) > 3:
        logger.debug("quadpack_message: %s", out[3])
    value = head_value + tail_value
    error = head_error + tail_error
    requested = max(settings.quad_abs_tol, settings.quad_rel_tol * max(abs(value), scale))
    result = QuadratureResult(value, error, int(info.get("last", 0)), requested, error <= requested)
    if not result.converged:
        logger.warning("quadrature_tolerance_missed: error %.3e > %.3e", error, requested)
        raise ToleranceNotMet(f"quadrature error {error:.3e} exceeds {requested:.3e}", result=result)
    return result


def _weighted(family: Family, m: int, a: float, f: RealPoly, g: RealPoly):
    """Head integrand, tail integrand and head factor for ∫ f·g·W.

    For a < 0 the head uses x = t^{1/(a+1)}, which turns x^a dx into dt/(a+1) and leaves a
    bounded integrand on [0, 1].
    """
    lpoly = substitute_alpha(family_denominator(family, m), a, "exact")
    with mpmath.workdps(settings.quad_head_dps):
        fc, gc, lc = f.mp_coeffs(), g.mp_coeffs(), lpoly.mp_coeffs()
        ma = mpmath.mpf(a)
        power = 1 / (ma + 1)

    def smooth(x):
        lx = mpmath.polyval(lc, x)
        return mpmath.polyval(fc, x) * mpmath.polyval(gc, x) * mpmath.exp(-x) / (lx * lx)

    if a < 0:

        def head_integrand(t):
            return smooth(mpmath.power(t, power)) if t > 0 else smooth(mpmath.mpf(0))

        head_factor = 1 / (a + 1)
    else:

        def head_integrand(x):
            if x <= 0:
                return mpmath.mpf(0)
            return smooth(x) * mpmath.power(x, ma)

        head_factor = 1.0

    def float_integrand(x: float) -> float:
        lx = lpoly(x)
        return float(f(x) * g(x) * x**a * math.exp(-x) / (lx * lx))

    return head_integrand, float_integrand, head_factor


def inner_product(
    family: Family | str,
    m: int,
    a: float,
    f: RealPoly,
    g: RealPoly,
    scale: float = 0.0,
) -> QuadratureResult:
    """∫_0^∞ f·g·W dx. scale sets the magnitude the relative tolerance refers to when the value is near 0."""
    family = Family.parse(family)
    family.check_alpha(m, a)
    if f.is_zero or g.is_zero:
        return QuadratureResult(0.0, 0.0, 0, settings.quad_abs_tol, True)
    head_integrand, float_integrand, head_factor = _weighted(family, m, a, f, g)
    return _integrate(head_integrand, float_integrand, scale, head_factor)


def norm_closed_form(family: Family | str, m: int, n: int, a: float) -> float:
    """Squared norms:
    I: (a+n)Γ(a+n−m)/(n−m)!    II: (a+1+n−2m)Γ(a+2+n−m)/(n−m)!
    III: nΓ(n−m+a+1)/(n−m−1)! for n ≥ m+1, Γ(a+1)Γ(−a)m!/Γ(m−a) for n = 0.
    """
    family = Family.parse(family)
    family.check_alpha(m, a)
    if family is Family.CLASSICAL:
        return classical_norm(n, a)
    DegreeSet(family, m).check(n)
    if family is Family.TYPE_I:
        return (a + n) * float(gamma(a + n - m)) / math.factorial(n - m)
    if family is Family.TYPE_II:
        return (a + 1 + n - 2 * m) * float(gamma(a + 2 + n - m)) / math.factorial(n - m)
    if n == 0:
        return float(gamma(a + 1) * gamma(-a)) * math.factorial(m) / float(gamma(m - a))
    return n * float(gamma(n - m + a + 1)) / math.factorial(n - m - 1)


def _numeric_poly(family: Family, m: int, n: int, a: float) -> RealPoly:
    return substitute_alpha(exceptional_polynomial(family, m, n), a, "exact", provenance=(family.value, m, n))


@dataclass
class NormCheck:
    family: Family
    m: int
    n: int
    a: float
    quadrature: QuadratureResult
    closed_form: float

    @property
    def rel_error(self) -> float:
        return abs(self.quadrature.value - self.closed_form) / abs(self.closed_form)


def norm_comparison(family: Family | str, m: int, n: int, a: float) -> NormCheck:
    family = Family.parse(family)
    closed = norm_closed_form(family, m, n, a)
    p = _numeric_poly(family, m, n, a)
    return NormCheck(family, m, n, a, inner_product(family, m, a, p, p), closed)


def classical_norm_check(n: int, a: float) -> NormCheck:
    """Quadrature of (L_n^a)² x^a e^{−x} against Γ(n+a+1)/n!."""
    return norm_comparison(Family.CLASSICAL, 0, n, a)


@dataclass
class GramResult:
    degrees: list[int]
    matrix: np.ndarray
    closed_forms: np.ndarray

    @property
    def diag_rel_errors(self) -> np.ndarray:
        return np.abs(np.diag(self.matrix) - self.closed_forms) / np.abs(self.closed_forms)

    @property
    def max_offdiag_rel(self) -> float:
        d = np.sqrt(np.abs(np.diag(self.matrix)))
        rel = np.abs(self.matrix) / np.outer(d, d)
        np.fill_diagonal(rel, 0.0)
        return float(rel.max()) if rel.size else 0.0

    def passed(self, tol: float = 1e-8) -> bool:
        return bool(np.all(self.diag_rel_errors < tol)) and self.max_offdiag_rel < tol


def gram_matrix(family: Family | str, m: int, a: float, degrees: Sequence[int]) -> GramResult:
    family = Family.parse(family)
    degrees = list(degrees)
    closed = np.array([norm_closed_form(family, m, n, a) for n in degrees])
    polys = [_numeric_poly(family, m, n, a) for n in degrees]
    size = len(degrees)
    gram = np.zeros((size, size))
    for i in range(size):
        for j in range(i, size):
            scale = math.sqrt(closed[i] * closed[j])
            gram[i, j] = gram[j, i] = inner_product(family, m, a, polys[i], polys[j], scale).value
    logger.info("gram_matrix_built", extra={"family": family.value, "m": m, "size": size})
    return GramResult(degrees, gram, closed)


def projection_residuals(m: int, a: float, j: int, n_max: int) -> list[float]:
    """‖x^j‖² − Σ_{first N} ⟨x^j, p⟩²/‖p‖² for N = 1 … n_max over the Type III eigenfunctions."""
    family = Family.TYPE_III
    family.check_alpha(m, a)
    f = substitute_alpha(XPoly.monomial(j), a, "exact")
    total = inner_product(family, m, a, f, f).value
    residuals: list[float] = []
    remaining = total
    for n in DegreeSet(family, m).first(n_max):
        norm = norm_closed_form(family, m, n, a)
        c = inner_product(family, m, a, f, _numeric_poly(family, m, n, a), math.sqrt(total * norm)).value
        remaining -= c * c / norm
        residuals.append(remaining)
    return residuals


# ---------------------------------------------------------------------------
# Root theorems
# ---------------------------------------------------------------------------


@dataclass
class RootReport:
    family: Family
    m: int
    n: int
    a: float
    positive_roots: list[float]
    negative_roots: list[float]
    complex_roots: list[complex] = field(default_factory=list)
    reference_pos: list[float] = field(default_factory=list)
    reference_neg: list[float] = field(default_factory=list)
    interlacing: list[bool] = field(default_factory=list)
    expected_positive: int = 0
    expected_negative: int = 0

    @property
    def counts_ok(self) -> bool:
        return len(self.positive_roots) == self.expected_positive and len(self.negative_roots) == self.expected_negative

    @property
    def verdict(self) -> bool:
        return self.counts_ok and all(self.interlacing)

    def as_dict(self) -> dict:
        return {
            "family": self.family.value,
            "m": self.m,
            "n": self.n,
            "alpha": self.a,
            "positive_roots": self.positive_roots,
            "negative_roots": self.negative_roots,
            "complex_roots": [[z.real, z.imag] for z in self.complex_roots],
            "reference_pos": self.reference_pos,
            "reference_neg": self.reference_neg,
            "interlacing": self.interlacing,
            "verdict": "pass" if self.verdict else "fail",
        }


def _interval_signs(p: RealPoly, cuts: list[float], left_infinite: bool, right_infinite: bool) -> list[bool]:
    """One sign change per interval between consecutive cuts (with ±∞ ends when flagged)."""
    signs: list[int] = []
    if left_infinite:
        signs.append(_sign_at_infinity(p, negative=True))
    signs.extend(_sign_at(p, c) for c in cuts)
    if right_infinite:
        signs.append(_sign_at_infinity(p, negative=False))
    return [s * t < 0 for s, t in zip(signs, signs[1:], strict=False)]


def interlacing_check(m: int, k: int, a: float) -> RootReport:
    """Type III: one root in each of (0,x_1), …, (x_{k−1},∞) and each of (−∞,z_m), …, (z_2,z_1).

    x_i are the roots of L_{k−1}^{α+1}, z_i those of L_m^{−α−1}(−x). There are k+m
    intervals and the degree is k+m, so one sign change per interval pins every root.
    """
    Family.TYPE_III.check_alpha(m, a)
    if m < 1 or k < 1:
        raise ValueError("m and k must be at least 1")
    n = m + k
    p = _numeric_poly(Family.TYPE_III, m, n, a)
    ref_pos = _laguerre_roots(k - 1, a + 1)
    ref_neg = sorted(-x for x in _laguerre_roots(m, -a - 1))
    positive = _interval_signs(p, [0.0, *ref_pos], left_infinite=False, right_infinite=True)
    negative = _interval_signs(p, ref_neg, left_infinite=True, right_infinite=False)
    roots = polynomial_roots(p)
    report = RootReport(
        Family.TYPE_III,
        m,
        n,
        a,
        roots.positive,
        roots.negative,
        roots.complex,
        ref_pos,
        ref_neg,
        negative + positive,
        expected_positive=k,
        expected_negative=m,
    )
    if not report.verdict:
        logger.warning("interlacing_failed", extra={"m": m, "k": k, "alpha": a})
    return report


def critical_points_check(m: int, k: int, a: float, tol: float = 1e-8) -> bool:
    """Roots of (L^{III}_{m,m+k})' are the roots of L_{k−1}^{α+1} and of L_m^{−α−1}(−x)."""
    Family.TYPE_III.check_alpha(m, a)
    derivative = substitute_alpha(xlag3(m, m + k).diff(), a, "exact")
    found = real_roots(derivative)
    expected = sorted(_laguerre_roots(k - 1, a + 1) + [-x for x in _laguerre_roots(m, -a - 1)])
    if len(found) != len(expected):
        return False
    return all(abs(x - y) <= tol * max(1.0, abs(y)) for x, y in zip(found, expected, strict=True))


def type1_root_report(m: int, k: int, a: float) -> RootReport:
    """k positive and m negative simple roots; the smallest positive root lies below the first root of L_k^α.

    The negative roots are listed next to the roots of L_m^α(−x) for reference only.
    """
    Family.TYPE_I.check_alpha(m, a)
    n = m + k
    roots = polynomial_roots(_numeric_poly(Family.TYPE_I, m, n, a))
    ref_pos = _laguerre_roots(k, a)
    below_first = bool(roots.positive) and bool(ref_pos) and roots.positive[0] < ref_pos[0]
    return RootReport(
        Family.TYPE_I,
        m,
        n,
        a,
        roots.positive,
        roots.negative,
        roots.complex,
        ref_pos,
        sorted(-x for x in _laguerre_roots(m, a)),
        [below_first],
        expected_positive=k,
        expected_negative=m,
    )


def type2_root_report(m: int, n: int, a: float) -> RootReport:
    """n−m positive roots, m mod 2 negative roots, the rest complex."""
    Family.TYPE_II.check_alpha(m, a)
    DegreeSet(Family.TYPE_II, m).check(n)
    roots = polynomial_roots(_numeric_poly(Family.TYPE_II, m, n, a))
    return RootReport(
        Family.TYPE_II,
        m,
        n,
        a,
        roots.positive,
        roots.negative,
        roots.complex,
        expected_positive=n - m,
        expected_negative=m % 2,
    )


# ---------------------------------------------------------------------------
# Large-degree evaluation and asymptotics
# ---------------------------------------------------------------------------


def _mp_laguerre(n: int, b, x):
    if n < 0:
        return mpmath.mpf(0)
    prev, cur = mpmath.mpf(0), mpmath.mpf(1)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + b - x) * cur - (k + b) * prev) / (k + 1)
    return cur


def family_value(family: Family | str, m: int, n: int, a: float, x):
    """L^{T}_{m,n}(x) at numeric α = a from the defining Laguerre products, in mpmath."""
    family = Family.parse(family)
    a = mpmath.mpf(a)
    x = mpmath.mpf(x)
    lag = _mp_laguerre
    if family is Family.TYPE_I:
        DegreeSet(family, m).check(n)
        return lag(m, a, -x) * lag(n - m, a - 1, x) + lag(m, a - 1, -x) * lag(n - m - 1, a, x)
    if family is Family.TYPE_II:
        DegreeSet(family, m).check(n)
        return x * lag(m, -a - 1, x) * lag(n - m - 1, a + 2, x) + (m - a - 1) * lag(m, -a - 2, x) * lag(
            n - m, a + 1, x
        )
    if family is Family.TYPE_III:
        DegreeSet(family, m).check(n)
        if n == 0:
            return mpmath.mpf(1)
        k = n - m
        return x * lag(k - 2, a + 2, x) * lag(m, -a - 1, -x) + (m + 1) * lag(k - 1, a + 1, x) * lag(
            m + 1, -a - 2, -x
        )
    return lag(n, a, x)


def _scan_roots(
    func: Callable[[float], float], lo: float, hi: float, points: int, limit: int | None = None
) -> list[float]:
    grid = np.linspace(lo, hi, points)
    values = [func(float(x)) for x in grid]
    found: list[float] = []
    for x0, x1, v0, v1 in zip(grid, grid[1:], values, values[1:], strict=False):
        if v0 == 0:
            found.append(float(x0))
        elif v0 * v1 < 0:
            found.append(float(brentq(func, x0, x1, xtol=1e-15, rtol=4 * np.finfo(float).eps)))
        if limit is not None and len(found) >= limit:
            break
    return found


@dataclass
class AsymptoticsTable:
    family: Family
    m: int
    a: float
    k_values: list[int]
    columns: dict[str, list[float]]
    targets: dict[str, float] = field(default_factory=dict)

    def trend(self, column: str) -> bool:
        values = self.columns[column]
        return all(b < a for a, b in zip(values, values[1:], strict=False))

    @property
    def trends(self) -> dict[str, bool]:
        return {name: self.trend(name) for name in self.columns}

    def terminal(self, column: str) -> float:
        return self.columns[column][-1]


def _exceptional_distance(roots: list[float], targets: list[float]) -> float:
    if len(roots) != len(targets):
        raise ConvergenceFailure(f"found {len(roots)} exceptional roots, expected {len(targets)}")
    return max(abs(r - t) for r, t in zip(sorted(roots), sorted(targets), strict=True))


def asymptotics_probe(
    family: Family | str, m: int, a: float, k_values: Sequence[int], indices: int = 3
) -> AsymptoticsTable:
    """Root asymptotics over increasing k.

    Type III: distance of the exceptional roots to the roots of L_m^{−α−1}(−x), and the
    first positive root. Types I/II: relative gap |n_eff·x_{k,i} − j_{a,i}²/4| / (j²/4)
    for i = 1…indices (n_eff is k for Type I and n for Type II) and, for Type I, the
    distance of the negative roots to the roots of L_m^{α−1}(−x).
    """
    family = Family.parse(family)
    family.check_alpha(m, a)
    ks = list(k_values)
    if ks != sorted(ks) or len(set(ks)) != len(ks):
        raise ValueError("k values must be strictly increasing")
    if family is not Family.TYPE_III and ks and ks[0] < indices:
        raise ValueError(f"k must be at least {indices} to track {indices} positive roots")
    columns: dict[str, list[float]] = {}
    targets: dict[str, float] = {}
    with mpmath.workdps(settings.polish_dps):
        for k in ks:
            n = m + k

            def f(x: float, n: int = n) -> float:
                return float(family_value(family, m, n, a, x))

            if family is Family.TYPE_III:
                targets_neg = sorted(-x for x in _laguerre_roots(m, -a - 1))
                reach = 2 * abs(targets_neg[0]) + 5
                neg = _scan_roots(f, -reach, -1e-12, 400)
                first_pos_bound = _laguerre_roots(k - 1, a + 1)[0] if k > 1 else 10.0
                first = _scan_roots(f, 0.0, first_pos_bound, 200, limit=1)
                if not first:
                    raise ConvergenceFailure(f"no positive root below {first_pos_bound} at k={k}")
                columns.setdefault("exceptional_distance", []).append(_exceptional_distance(neg, targets_neg))
                columns.setdefault("first_positive_root", []).append(first[0])
                continue
            n_eff = k if family is Family.TYPE_I else n
            zeros = [bessel_zero(a, i) for i in range(1, indices + 1)]
            upper = 1.5 * zeros[-1] ** 2 / (4 * n_eff)
            pos = _scan_roots(f, 1e-14, upper, 600, limit=indices)
            if len(pos) < indices:
                raise ConvergenceFailure(f"found {len(pos)} small positive roots at k={k}, need {indices}")
            for i, (x, j) in enumerate(zip(pos, zeros, strict=True), start=1):
                limit = j * j / 4
                targets[f"scaled_root_{i}"] = limit
                columns.setdefault(f"scaled_root_{i}", []).append(abs(n_eff * x - limit) / limit)
            if family is Family.TYPE_I:
                targets_neg = sorted(-x for x in _laguerre_roots(m, a - 1))
                reach = 2 * abs(targets_neg[0]) + 5
                neg = _scan_roots(f, -reach, -1e-12, 400)
                columns.setdefault("exceptional_distance", []).append(_exceptional_distance(neg, targets_neg))
    table = AsymptoticsTable(family, m, a, ks, columns, targets)
    logger.info("asymptotics_probe_done", extra={"family": family.value, "m": m, "trends": table.trends})
    return table

