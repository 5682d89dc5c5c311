"""Exact arithmetic: polynomials in α over Q, polynomials in x over those, and their quotients.

AlphaPoly and XPoly are immutable dense coefficient tuples in ascending powers, always
trimmed so the highest stored coefficient is nonzero. The zero polynomial is the empty
tuple and reports degree -1.

RatFunc keeps num/den with no common factor: content gcd over Q[α] plus a primitive
pseudo-remainder gcd in x. The leading x-coefficient of den is normalized so that its own
leading rational coefficient is 1.
"""

from __future__ import annotations

import ast
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import TYPE_CHECKING, Literal

import numpy as np

from .errors import DivisionByZeroPoly, NotDivisible

if TYPE_CHECKING:
    from .realpoly import RealPoly

logger = logging.getLogger("xlaguerre.core")

Scalar = int | Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trimmed(values: Iterable, is_zero) -> tuple:
    out = list(values)
    while out and is_zero(out[-1]):
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# AlphaPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AlphaPoly:
    """Polynomial in the symbolic parameter α with rational coefficients."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trimmed((Fraction(c) for c in self.coeffs), lambda c: c == 0))

    @classmethod
    def const(cls, value: Scalar) -> AlphaPoly:
        return cls((Fraction(value),))

    @classmethod
    def alpha(cls) -> AlphaPoly:
        return cls((_ZERO, _ONE))

    @classmethod
    def linear(cls, sign: int, offset: Scalar) -> AlphaPoly:
        """sign·α + offset."""
        return cls((Fraction(offset), Fraction(sign)))

    @classmethod
    def lift(cls, value: AlphaPoly | Scalar) -> AlphaPoly:
        return value if isinstance(value, AlphaPoly) else cls.const(value)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else _ZERO

    def __add__(self, other: AlphaPoly | Scalar) -> AlphaPoly:
        other = AlphaPoly.lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return AlphaPoly(tuple(a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))))

    __radd__ = __add__

    def __neg__(self) -> AlphaPoly:
        return AlphaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: AlphaPoly | Scalar) -> AlphaPoly:
        return self + (-AlphaPoly.lift(other))

    def __rsub__(self, other: AlphaPoly | Scalar) -> AlphaPoly:
        return AlphaPoly.lift(other) - self

    def __mul__(self, other: AlphaPoly | Scalar) -> AlphaPoly:
        if not isinstance(other, AlphaPoly):
            s = Fraction(other)
            return AlphaPoly(tuple(c * s for c in self.coeffs)) if s else AlphaPoly()
        if self.is_zero or other.is_zero:
            return AlphaPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return AlphaPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> AlphaPoly:
        if k < 0:
            raise ValueError("negative power of AlphaPoly")
        result = AlphaPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation; exact for Fraction/int arguments."""
        acc = 0 * value
        for c in reversed(self.coeffs):
            acc = acc * value + (c if isinstance(value, Fraction | int) else float(c))
        return acc

    def compose(self, inner: AlphaPoly) -> AlphaPoly:
        """self(inner(α)), used for parameter substitutions such as α → −α or α → α−1."""
        acc = AlphaPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divmod(self, other: AlphaPoly) -> tuple[AlphaPoly, AlphaPoly]:
        if other.is_zero:
            raise DivisionByZeroPoly("division by the zero AlphaPoly")
        rem = list(self.coeffs)
        quot = [_ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        for shift in range(len(rem) - len(other.coeffs), -1, -1):
            factor = rem[shift + len(other.coeffs) - 1] / lead
            if factor == 0:
                continue
            quot[shift] = factor
            for j, c in enumerate(other.coeffs):
                rem[shift + j] -= factor * c
        return AlphaPoly(tuple(quot)), AlphaPoly(tuple(rem))

    def exact_div(self, other: AlphaPoly) -> AlphaPoly:
        q, r = self.divmod(other)
        if not r.is_zero:
            raise NotDivisible(f"{self} is not divisible by {other}", remainder=r)
        return q

    def monic(self) -> AlphaPoly:
        return self * (1 / self.leading) if self.coeffs else self

    def gcd(self, other: AlphaPoly) -> AlphaPoly:
        """Monic gcd over Q; gcd(0, 0) is 0."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def rational_roots(self) -> list[tuple[Fraction, int]]:
        """Rational roots with multiplicity, candidates from floating roots snapped to small denominators."""
        found: list[tuple[Fraction, int]] = []
        rest = self
        zero_mult = 0
        while rest.degree >= 1 and rest.constant_term == 0:
            rest = AlphaPoly(rest.coeffs[1:])
            zero_mult += 1
        if zero_mult:
            found.append((_ZERO, zero_mult))
        if rest.degree < 1:
            return found
        approx = np.roots([float(c) for c in reversed(rest.coeffs)])
        tried: set[Fraction] = set()
        for z in approx:
            if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
                continue
            cand = Fraction(float(z.real)).limit_denominator(64)
            if cand in tried:
                continue
            tried.add(cand)
            factor = AlphaPoly((-cand, _ONE))
            mult = 0
            while rest.degree >= 1:
                q, r = rest.divmod(factor)
                if not r.is_zero:
                    break
                rest = q
                mult += 1
            if mult:
                found.append((cand, mult))
        return found

    def __str__(self) -> str:
        return format_alpha(self)


# ---------------------------------------------------------------------------
# XPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class XPoly:
    """Polynomial in x whose coefficients are AlphaPoly values."""

    coeffs: tuple[AlphaPoly, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", _trimmed((AlphaPoly.lift(c) for c in self.coeffs), lambda c: c.is_zero)
        )

    @classmethod
    def const(cls, value: AlphaPoly | Scalar) -> XPoly:
        return cls((AlphaPoly.lift(value),))

    @classmethod
    def x(cls) -> XPoly:
        return cls((AlphaPoly(), AlphaPoly.const(1)))

    @classmethod
    def monomial(cls, power: int, coeff: AlphaPoly | Scalar = 1) -> XPoly:
        return cls(tuple([AlphaPoly()] * power + [AlphaPoly.lift(coeff)]))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> XPoly:
        """Build from nested ascending coefficient lists: rows[i][j] multiplies α^j x^i."""
        return cls(tuple(AlphaPoly(tuple(Fraction(v) for v in row)) for row in rows))

    @classmethod
    def lift(cls, value: XPoly | AlphaPoly | Scalar) -> XPoly:
        return value if isinstance(value, XPoly) else cls.const(value)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> AlphaPoly:
        return self.coeffs[-1] if self.coeffs else AlphaPoly()

    @property
    def alpha_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    def coeff(self, power: int) -> AlphaPoly:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else AlphaPoly()

    def __add__(self, other: XPoly | AlphaPoly | Scalar) -> XPoly:
        other = XPoly.lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return XPoly(tuple(a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))))

    __radd__ = __add__

    def __neg__(self) -> XPoly:
        return XPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: XPoly | AlphaPoly | Scalar) -> XPoly:
        return self + (-XPoly.lift(other))

    def __rsub__(self, other: XPoly | AlphaPoly | Scalar) -> XPoly:
        return XPoly.lift(other) - self

    def __mul__(self, other: XPoly | AlphaPoly | Scalar) -> XPoly:
        if not isinstance(other, XPoly):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return XPoly()
        out = [AlphaPoly()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return XPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> XPoly:
        if k < 0:
            raise ValueError("negative power of XPoly")
        result = XPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, factor: AlphaPoly | Scalar) -> XPoly:
        factor = AlphaPoly.lift(factor)
        if factor.is_zero:
            return XPoly()
        return XPoly(tuple(c * factor for c in self.coeffs))

    def shift_x(self, power: int) -> XPoly:
        """Multiply by x^power."""
        if self.is_zero or power == 0:
            return self
        return XPoly(tuple([AlphaPoly()] * power) + self.coeffs)

    def diff(self) -> XPoly:
        return XPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k > 0))

    def antiderivative(self) -> XPoly:
        """The antiderivative vanishing at x = 0."""
        if self.is_zero:
            return XPoly()
        return XPoly((AlphaPoly(),) + tuple(c * Fraction(1, k + 1) for k, c in enumerate(self.coeffs)))

    def reflect(self) -> XPoly:
        """p(−x)."""
        return XPoly(tuple(-c if k % 2 else c for k, c in enumerate(self.coeffs)))

    def at_x(self, value: Scalar) -> AlphaPoly:
        acc = AlphaPoly()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def map_alpha(self, inner: AlphaPoly) -> XPoly:
        """Substitute α → inner(α) in every coefficient."""
        return XPoly(tuple(c.compose(inner) for c in self.coeffs))

    def content(self) -> AlphaPoly:
        """Monic gcd of the coefficients over Q[α]."""
        return reduce(lambda g, c: g.gcd(c), self.coeffs, AlphaPoly())

    def primitive_part(self) -> XPoly:
        if self.is_zero:
            return self
        c = self.content()
        if c.is_constant:
            return self * (1 / c.leading)
        return XPoly(tuple(k.exact_div(c) for k in self.coeffs))

    def pseudo_divmod(self, den: XPoly) -> tuple[XPoly, XPoly, AlphaPoly]:
        """Return (q, r, s) with s·self = q·den + r and deg r < deg den.

        s is a power of den's leading coefficient; when that coefficient is a nonzero
        rational the division is ordinary and s = 1.
        """
        if den.is_zero:
            raise DivisionByZeroPoly("division by the zero polynomial")
        lead = den.leading
        rem = list(self.coeffs)
        quot = [AlphaPoly()] * max(len(rem) - len(den.coeffs) + 1, 0)
        scale = AlphaPoly.const(1)
        if lead.is_constant:
            inv = 1 / lead.leading
            for shift in range(len(rem) - len(den.coeffs), -1, -1):
                factor = rem[shift + len(den.coeffs) - 1] * inv
                if factor.is_zero:
                    continue
                quot[shift] = factor
                for j, c in enumerate(den.coeffs):
                    rem[shift + j] = rem[shift + j] - factor * c
            return XPoly(tuple(quot)), XPoly(tuple(rem)), scale
        for shift in range(len(rem) - len(den.coeffs), -1, -1):
            top = rem[shift + len(den.coeffs) - 1]
            if top.is_zero:
                continue
            rem = [c * lead for c in rem]
            quot = [c * lead for c in quot]
            scale = scale * lead
            quot[shift] = quot[shift] + top
            for j, c in enumerate(den.coeffs):
                rem[shift + j] = rem[shift + j] - top * c
        return XPoly(tuple(quot)), XPoly(tuple(rem)), scale

    def pseudo_remainder(self, den: XPoly) -> XPoly:
        return self.pseudo_divmod(den)[1]

    def substitute(self, a, precision: Literal["double", "exact"] = "double") -> tuple:
        """Coefficients at α = a; Fractions when exact, floats otherwise."""
        if precision == "exact":
            value = Fraction(a)
            return tuple(c(value) for c in self.coeffs)
        value = float(a)
        return tuple(float(c(value)) for c in self.coeffs)

    def __str__(self) -> str:
        return format_xpoly(self)


# ---------------------------------------------------------------------------
# Ring operations with the names used throughout the package
# ---------------------------------------------------------------------------


def poly_add(p: XPoly, q: XPoly) -> XPoly:
    return p + q


def poly_mul(p: XPoly, q: XPoly) -> XPoly:
    return p * q


def poly_scale(p: XPoly, q: AlphaPoly | Scalar) -> XPoly:
    return p.scale(q)


def poly_diff(p: XPoly) -> XPoly:
    return p.diff()


def poly_reflect(p: XPoly) -> XPoly:
    return p.reflect()


def poly_divide_exact(num: XPoly, den: XPoly) -> XPoly:
    """Return q with num = q·den exactly; NotDivisible otherwise."""
    quotient, remainder, scale = num.pseudo_divmod(den)
    if not remainder.is_zero:
        raise NotDivisible(f"remainder {remainder} dividing by {den}", remainder=remainder)
    if scale.is_constant:
        return quotient * (1 / scale.leading)
    try:
        return XPoly(tuple(c.exact_div(scale) for c in quotient.coeffs))
    except NotDivisible as e:
        raise NotDivisible(f"quotient of {num} by {den} leaves Q[α]", remainder=e.remainder) from e


def poly_gcd(p: XPoly, q: XPoly) -> XPoly:
    """gcd over Q[α][x] by primitive pseudo-remainder sequences; primitive, content-monic."""
    if p.is_zero:
        return q.primitive_part() * q.content() if not q.is_zero else XPoly()
    if q.is_zero:
        return p.primitive_part() * p.content()
    content = p.content().gcd(q.content())
    a, b = p.primitive_part(), q.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        if b.degree == 0:
            a = XPoly.const(1)
            break
        r = a.pseudo_remainder(b)
        a, b = b, r.primitive_part()
    return a.primitive_part() * content


def substitute_alpha(
    p: XPoly,
    a,
    precision: Literal["double", "exact"] = "exact",
    provenance: tuple | None = None,
) -> RealPoly:
    """Numeric image of p at α = a.

    With precision="exact" the coefficients are also kept as Fractions (floats are
    converted exactly through Fraction(a)), which the numeric layer uses for
    extended-precision evaluation.
    """
    from .realpoly import RealPoly

    exact = p.substitute(a, "exact") if precision == "exact" else None
    floats = tuple(float(c) for c in exact) if exact is not None else p.substitute(a, "double")
    return RealPoly(coeffs=floats, exact=exact, source_alpha=float(a), provenance=provenance)


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True, eq=False)
class RatFunc:
    """num/den over Q[α][x] in reduced canonical form. Build with RatFunc.of()."""

    num: XPoly
    den: XPoly

    @classmethod
    def of(cls, num: XPoly | AlphaPoly | Scalar, den: XPoly | AlphaPoly | Scalar = 1) -> RatFunc:
        return ratfunc_reduce(XPoly.lift(num), XPoly.lift(den))

    @classmethod
    def poly(cls, p: XPoly | AlphaPoly | Scalar) -> RatFunc:
        return cls(XPoly.lift(p), XPoly.const(1))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and self.den.leading.is_constant

    def as_poly(self) -> XPoly:
        if not self.is_polynomial:
            raise NotDivisible(f"{self} is not a polynomial", remainder=self.num)
        return self.num * (1 / self.den.leading.leading)

    def __add__(self, other: RatFunc | XPoly | AlphaPoly | Scalar) -> RatFunc:
        other = _as_ratfunc(other)
        if self.den == other.den:
            return ratfunc_reduce(self.num + other.num, self.den)
        return ratfunc_reduce(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: RatFunc | XPoly | AlphaPoly | Scalar) -> RatFunc:
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other: RatFunc | XPoly | AlphaPoly | Scalar) -> RatFunc:
        return _as_ratfunc(other) - self

    def __mul__(self, other: RatFunc | XPoly | AlphaPoly | Scalar) -> RatFunc:
        other = _as_ratfunc(other)
        return ratfunc_reduce(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc | XPoly | AlphaPoly | Scalar) -> RatFunc:
        other = _as_ratfunc(other)
        if other.is_zero:
            raise DivisionByZeroPoly("division by the zero rational function")
        return ratfunc_reduce(self.num * other.den, self.den * other.num)

    def diff(self) -> RatFunc:
        return ratfunc_reduce(self.num.diff() * self.den - self.num * self.den.diff(), self.den * self.den)

    def map_alpha(self, inner: AlphaPoly) -> RatFunc:
        return ratfunc_reduce(self.num.map_alpha(inner), self.den.map_alpha(inner))

    def cleared(self, den: XPoly) -> XPoly:
        """self·den as a polynomial; den must be a multiple of self.den."""
        return poly_divide_exact(self.num * den, self.den)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, XPoly | AlphaPoly | int | Fraction):
            other = RatFunc.poly(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    def __hash__(self) -> int:
        reduced = ratfunc_reduce(self.num, self.den)
        if reduced.is_polynomial:
            return hash(reduced.num)
        return hash((reduced.num, reduced.den))

    def __str__(self) -> str:
        if self.is_polynomial:
            return format_xpoly(self.as_poly())
        return f"({format_xpoly(self.num)}) / ({format_xpoly(self.den)})"


def _as_ratfunc(value: RatFunc | XPoly | AlphaPoly | Scalar) -> RatFunc:
    return value if isinstance(value, RatFunc) else RatFunc.poly(value)


def ratfunc_reduce(num: XPoly, den: XPoly) -> RatFunc:
    """Canonical num/den: common factors removed, den's leading coefficient normalized."""
    if den.is_zero:
        raise DivisionByZeroPoly("rational function with zero denominator")
    if num.is_zero:
        return RatFunc(XPoly(), XPoly.const(1))
    if den.degree > 0 or not den.leading.is_constant:
        g = poly_gcd(num, den)
        if g.degree > 0 or not g.leading.is_constant:
            num = poly_divide_exact(num, g)
            den = poly_divide_exact(den, g)
    norm = 1 / den.leading.leading
    return RatFunc(num * norm, den * norm)


# ---------------------------------------------------------------------------
# Plain-text format and parser (α printed as `a`)
# ---------------------------------------------------------------------------


def _format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _format_expanded(p: AlphaPoly) -> str:
    terms: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _format_fraction(mag)
        else:
            var = "a" if k == 1 else f"a^{k}"
            body = var if mag == 1 else f"{_format_fraction(mag)}*{var}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+" if c > 0 else "-") + body)
    return "".join(terms) or "0"


def _linear_factor(root: Fraction) -> str:
    if root == 0:
        return "a"
    num, den = -root.numerator, root.denominator
    lead = "a" if den == 1 else f"{den}*a"
    return f"({lead}{'+' if num > 0 else '-'}{abs(num)})"


def _factored(p: AlphaPoly) -> tuple[Fraction, list[str]]:
    """Split p into a rational constant and printable factors (linear over Q first)."""
    factors: list[str] = []
    rest = p
    roots = sorted(p.rational_roots(), key=lambda rm: (rm[0] != 0, -rm[0]))
    for root, mult in roots:
        linear = AlphaPoly((-root, _ONE))
        for _ in range(mult):
            rest = rest.exact_div(linear)
        text = _linear_factor(root)
        if root.denominator != 1:
            rest = rest * Fraction(1, root.denominator**mult)
        factors.extend([text] * mult)
    const = rest.leading
    if rest.degree >= 1:
        monic_rest = rest * (1 / const)
        scale = lcm(*(c.denominator for c in monic_rest.coeffs))
        const = const / scale
        factors.append(f"({_format_expanded(monic_rest * scale)})")
    return const, factors


def format_alpha(p: AlphaPoly, factored: bool = True) -> str:
    if p.is_zero:
        return "0"
    if not factored or p.degree < 1:
        return _format_expanded(p)
    const, factors = _factored(p)
    body = "*".join(factors)
    if const == 1:
        return body
    if const == -1:
        return f"-{body}"
    return f"{_format_fraction(const)}*{body}"


def _has_top_level_sum(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_xpoly(p: XPoly, factored: bool = True) -> str:
    """Descending powers of x, e.g. ``x^2 - 2*a*x + a*(a+1)``."""
    if p.is_zero:
        return "0"
    out: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero:
            continue
        var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        text = format_alpha(c, factored=factored)
        negative = False
        if _has_top_level_sum(text):
            text = f"({text})"
        elif text.startswith("-"):
            negative, text = True, text[1:]
        if var:
            text = var if text == "1" else f"{text}*{var}"
        if not out:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


_ALLOWED_NAMES = {"x": XPoly.x(), "a": XPoly.const(AlphaPoly.alpha()), "α": XPoly.const(AlphaPoly.alpha())}


def _eval_node(node: ast.AST) -> XPoly:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return XPoly.const(node.value)
    if isinstance(node, ast.Name):
        if node.id not in _ALLOWED_NAMES:
            raise ValueError(f"unknown symbol {node.id!r}")
        return _ALLOWED_NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub | ast.UAdd):
        value = _eval_node(node.operand)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponent must be a non-negative integer literal")
            return left ** int(node.right.value)
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.degree != 0 or not right.leading.is_constant:
                raise ValueError("division only by rational constants")
            return left * (1 / right.leading.leading)
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


def parse_xpoly(text: str) -> XPoly:
    """Parse plain-text polynomials in x and a (α). Accepts ^ or ** for powers."""
    source = text.strip().replace("^", "**")
    if not source:
        raise ValueError("empty polynomial text")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as e:
        raise ValueError(f"cannot parse polynomial {text!r}: {e.msg}") from e
    return _eval_node(tree)


def parse_alpha(text: str) -> AlphaPoly:
    p = parse_xpoly(text)
    if p.degree > 0:
        raise ValueError(f"{text!r} depends on x")
    return p.leading if not p.is_zero else AlphaPoly()


# ---------------------------------------------------------------------------
# JSON form: AlphaPoly -> [{num, den}, ...] ascending in α
# ---------------------------------------------------------------------------


def alpha_to_json(p: AlphaPoly) -> list[dict[str, int]]:
    return [{"num": c.numerator, "den": c.denominator} for c in p.coeffs]


def alpha_from_json(items: Sequence[dict[str, int]]) -> AlphaPoly:
    return AlphaPoly(tuple(Fraction(int(i["num"]), int(i["den"])) for i in items))


def xpoly_to_json(p: XPoly) -> list[list[dict[str, int]]]:
    return [alpha_to_json(c) for c in p.coeffs]


def xpoly_from_json(rows: Sequence[Sequence[dict[str, int]]]) -> XPoly:
    return XPoly(tuple(alpha_from_json(r) for r in rows))
