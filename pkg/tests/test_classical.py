"""Tests for classical.py -- Laguerre recurrence, explicit sum, identities and norms."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from xlaguerre.classical import (
    ALPHA,
    LaguerreIndex,
    alpha_binomial,
    classical_eigen_residual,
    classical_norm,
    laguerre,
    laguerre_binomial,
    laguerre_derivative_identity_check,
    laguerre_explicit,
    laguerre_three_point_identities,
    reflected_equation_residual,
)
from xlaguerre.core import AlphaPoly, XPoly, parse_xpoly
from xlaguerre.errors import DomainError


class TestLaguerreIndex:
    def test_str(self):
        assert str(ALPHA) == "a"
        assert str(LaguerreIndex.minus(-2)) == "-a-2"
        assert str(LaguerreIndex.plus(1)) == "a+1"

    def test_shifted_and_substituted(self):
        p = LaguerreIndex.minus(-1)
        assert p.shifted(1) == LaguerreIndex.minus(0)
        # −(α+1) − 1 = −α − 2
        assert p.substituted(1) == LaguerreIndex.minus(-2)
        assert p.at(0.5) == pytest.approx(-1.5)

    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError, match="sign"):
            LaguerreIndex(2, 0)


class TestLaguerre:
    def test_low_degrees(self):
        assert laguerre(0) == XPoly.const(1)
        assert laguerre(1) == parse_xpoly("1 + a - x")
        assert laguerre(2) == parse_xpoly("x^2/2 - (a+2)*x + (a+1)*(a+2)/2")

    def test_negative_degree_is_zero(self):
        assert laguerre(-1).is_zero

    def test_reflected(self):
        assert laguerre(1, reflected=True) == parse_xpoly("1 + a + x")

    @pytest.mark.parametrize("n", [0, 1, 4, 7])
    def test_recurrence_matches_explicit_sum(self, n):
        for param in (ALPHA, LaguerreIndex.minus(-1), LaguerreIndex.plus(2)):
            assert laguerre(n, param) == laguerre_explicit(n, param)

    def test_value_at_zero_is_binomial(self):
        for n in range(6):
            assert laguerre(n).at_x(0) == laguerre_binomial(n)

    def test_leading_coefficient(self):
        assert laguerre(5).leading == AlphaPoly.const(Fraction(-1, math.factorial(5)))


class TestBinomials:
    def test_alpha_binomial(self):
        a = AlphaPoly.alpha()
        assert alpha_binomial(a + 2, 2) == (a + 2) * (a + 1) * Fraction(1, 2)
        assert alpha_binomial(a, 0) == AlphaPoly.const(1)
        assert alpha_binomial(a, -1).is_zero


class TestIdentities:
    @pytest.mark.parametrize("n", [0, 1, 3, 6])
    def test_derivative_identities(self, n):
        assert laguerre_derivative_identity_check(n)
        assert laguerre_derivative_identity_check(n, LaguerreIndex.minus(-1))

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_three_point(self, n):
        assert laguerre_three_point_identities(n)

    def test_three_point_needs_positive_degree(self):
        with pytest.raises(ValueError):
            laguerre_three_point_identities(0)

    @pytest.mark.parametrize("n", [0, 2, 5])
    def test_classical_eigen(self, n):
        assert classical_eigen_residual(n).is_zero
        assert classical_eigen_residual(n, LaguerreIndex.minus(-2)).is_zero

    def test_reflected_equation(self):
        assert reflected_equation_residual(4, LaguerreIndex.minus(-1)).is_zero


class TestClassicalNorm:
    def test_gamma_ratio(self):
        assert classical_norm(0, 0.0) == pytest.approx(1.0)
        assert classical_norm(3, 0.5) == pytest.approx(math.gamma(4.5) / 6)

    def test_domain(self):
        with pytest.raises(DomainError):
            classical_norm(2, -1.0)
