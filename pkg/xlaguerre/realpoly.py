"""Numeric images of symbolic polynomials after fixing α."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import numpy.polynomial.polynomial as npoly


@dataclass(frozen=True)
class RealPoly:
    """Float coefficients ascending in x, optionally backed by the exact rational ones.

    provenance is (family, m, n) when the polynomial came from a named constructor.
    """

    coeffs: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = None
    source_alpha: float = 0.0
    provenance: tuple | None = None

    def __post_init__(self) -> None:
        coeffs = list(self.coeffs)
        exact = list(self.exact) if self.exact is not None else None
        while coeffs and coeffs[-1] == 0 and (exact is None or exact[-1] == 0):
            coeffs.pop()
            if exact is not None:
                exact.pop()
        if not all(np.isfinite(coeffs)):
            raise ValueError("RealPoly coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs))
        object.__setattr__(self, "exact", tuple(exact) if exact is not None else None)

    @classmethod
    def from_floats(cls, coeffs, source_alpha: float = 0.0, provenance: tuple | None = None) -> RealPoly:
        return cls(coeffs=tuple(float(c) for c in coeffs), source_alpha=source_alpha, provenance=provenance)

    @classmethod
    def from_roots(cls, roots, scale: float = 1.0) -> RealPoly:
        return cls.from_floats(npoly.polyfromroots(roots) * scale)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __call__(self, x):
        if self.is_zero:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        return npoly.polyval(x, self.array)

    def derivative(self) -> RealPoly:
        exact = None
        if self.exact is not None:
            exact = tuple(c * k for k, c in enumerate(self.exact) if k > 0)
        coeffs = tuple(c * k for k, c in enumerate(self.coeffs) if k > 0)
        return RealPoly(coeffs=coeffs, exact=exact, source_alpha=self.source_alpha, provenance=self.provenance)

    def mp_coeffs(self) -> list:
        """Coefficients as mpf at the current mpmath precision, highest power first."""
        if self.exact is not None:
            return [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.exact)]
        return [mpmath.mpf(c) for c in reversed(self.coeffs)]

    def mp_eval(self, x, derivative: bool = False):
        """Extended-precision evaluation; returns (p, p') when derivative is set."""
        if self.is_zero:
            return (mpmath.mpf(0), mpmath.mpf(0)) if derivative else mpmath.mpf(0)
        return mpmath.polyval(self.mp_coeffs(), x, derivative=derivative)

    def __mul__(self, other: RealPoly) -> RealPoly:
        if self.is_zero or other.is_zero:
            return RealPoly(coeffs=(), exact=(), source_alpha=self.source_alpha)
        exact = None
        if self.exact is not None and other.exact is not None:
            prod = [Fraction(0)] * (len(self.exact) + len(other.exact) - 1)
            for i, a in enumerate(self.exact):
                for j, b in enumerate(other.exact):
                    prod[i + j] += a * b
            exact = tuple(prod)
        coeffs = tuple(float(c) for c in exact) if exact is not None else tuple(npoly.polymul(self.array, other.array))
        return RealPoly(coeffs=coeffs, exact=exact, source_alpha=self.source_alpha)
