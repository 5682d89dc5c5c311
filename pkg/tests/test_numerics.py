"""Tests for numerics.py -- roots, Bessel zeros, weighted quadrature and the root theorems."""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg

from xlaguerre.core import parse_xpoly, substitute_alpha
from xlaguerre.errors import DegreeNotAdmissible, DomainError
from xlaguerre.exceptional import DegreeSet, Family, exceptional_polynomial
from xlaguerre.numerics import (
    RealPoly,
    asymptotics_probe,
    bessel_zero,
    classical_norm_check,
    critical_points_check,
    family_value,
    gram_matrix,
    inner_product,
    interlacing_check,
    norm_closed_form,
    norm_comparison,
    polynomial_roots,
    projection_residuals,
    real_roots,
    type1_root_report,
    type2_root_report,
)

SQRT_PI = math.sqrt(math.pi)
TYPE3_ALPHAS = (-0.75, -0.5, -0.25)


def _norm_grid():
    cells = []
    for m in (1, 2, 3):
        for a in TYPE3_ALPHAS:
            cells += [("III", m, n, a) for n in DegreeSet(Family.TYPE_III, m).up_to(m + 8)]
        for a in (0.5, 1.5):
            cells += [("I", m, n, a) for n in DegreeSet(Family.TYPE_I, m).up_to(m + 8)]
        for a in (m - 0.5, m + 0.5):
            cells += [("II", m, n, a) for n in DegreeSet(Family.TYPE_II, m).up_to(m + 8)]
    return cells


def _gram_grid():
    cells = [("III", m, a) for m in (1, 2, 3) for a in TYPE3_ALPHAS]
    cells += [("I", m, a) for m in (1, 2, 3) for a in (0.5, 1.5)]
    cells += [("II", m, a) for m in (1, 2, 3) for a in (m - 0.5, m + 0.5)]
    return cells


class TestRoots:
    def test_from_roots(self):
        assert real_roots(RealPoly.from_roots([1.0, 2.0, 3.0])) == pytest.approx([1.0, 2.0, 3.0], abs=1e-12)

    def test_complex_pair(self):
        roots = polynomial_roots(RealPoly.from_floats([1.0, 0.0, 1.0]))
        assert roots.real == []
        assert len(roots.complex) == 2

    def test_type3_m1_k1(self):
        p = substitute_alpha(parse_xpoly("x^2 - 2*a*x + a*(a+1)"), -0.5)
        roots = polynomial_roots(p)
        assert roots.positive == pytest.approx([(math.sqrt(2) - 1) / 2], abs=1e-12)
        assert roots.negative == pytest.approx([-(math.sqrt(2) + 1) / 2], abs=1e-12)

    def test_constant_rejected(self):
        with pytest.raises(ValueError, match="degree"):
            polynomial_roots(RealPoly.from_floats([3.0]))

    def test_coalesced_guesses_fall_back_to_polyroots(self, monkeypatch):
        monkeypatch.setattr(scipy.linalg, "eigvals", lambda a: np.full(a.shape[0], 1.0 + 0j))
        roots = polynomial_roots(RealPoly.from_roots([1.0, 2.0, 3.0]))
        assert roots.real == pytest.approx([1.0, 2.0, 3.0], abs=1e-12)
        assert roots.complex == []

    def test_degree_23_type3_roots_are_distinct(self):
        roots = polynomial_roots(substitute_alpha(exceptional_polynomial("III", 3, 23), -0.75))
        assert len(roots.positive) == 20
        assert len(roots.negative) == 3
        assert roots.complex == []


class TestBesselZero:
    def test_known_zeros(self):
        assert bessel_zero(0.0, 1) == pytest.approx(2.404825557695773, rel=1e-12)
        assert bessel_zero(0.5, 1) == pytest.approx(math.pi, rel=1e-12)
        assert bessel_zero(0.5, 3) == pytest.approx(3 * math.pi, rel=1e-12)

    def test_negative_order(self):
        assert bessel_zero(-0.5, 1) == pytest.approx(math.pi / 2, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_zero(-1.0, 1)
        with pytest.raises(ValueError, match="starts at 1"):
            bessel_zero(0.0, 0)


class TestNorms:
    def test_closed_forms(self):
        assert norm_closed_form("I", 1, 1, 0.5) == pytest.approx(1.5 * SQRT_PI)
        assert norm_closed_form("III", 1, 0, -0.5) == pytest.approx(2 * SQRT_PI)
        assert norm_closed_form("III", 1, 2, -0.5) == pytest.approx(SQRT_PI)
        assert norm_closed_form("classical", 0, 2, -0.5) == pytest.approx(math.gamma(2.5) / 2)

    def test_closed_form_rejects_excluded_degree(self):
        with pytest.raises(DegreeNotAdmissible):
            norm_closed_form("III", 2, 1, -0.5)

    def test_closed_form_rejects_alpha(self):
        with pytest.raises(DomainError):
            norm_closed_form("II", 2, 3, 0.5)

    @pytest.mark.parametrize(
        "family,m,n,a",
        [("I", 1, 1, 0.5), ("I", 2, 4, 1.5), ("II", 1, 2, 0.5), ("II", 2, 3, 1.5), ("III", 1, 0, -0.5),
         ("III", 1, 3, -0.5), ("III", 2, 4, -0.25)],
    )
    def test_quadrature_matches_closed_form(self, family, m, n, a):
        check = norm_comparison(family, m, n, a)
        assert check.rel_error < 1e-8
        assert check.quadrature.converged

    @pytest.mark.parametrize(
        "family,m,n,a",
        [("III", 1, 0, -0.75), ("III", 2, 0, -0.75), ("III", 2, 5, -0.75), ("III", 2, 10, -0.75),
         ("III", 3, 11, -0.75), ("III", 1, 9, -0.25)],
    )
    def test_strong_endpoint_singularity(self, family, m, n, a):
        check = norm_comparison(family, m, n, a)
        assert check.rel_error < 1e-8
        assert check.quadrature.error_estimate <= check.quadrature.requested

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_type3_degree_zero_closed_form(self, m):
        a = -0.75
        expected = math.gamma(a + 1) * math.gamma(-a) * math.factorial(m) / math.gamma(m - a)
        assert norm_closed_form("III", m, 0, a) == pytest.approx(expected, rel=1e-12)
        assert norm_comparison("III", m, 0, a).quadrature.value == pytest.approx(expected, rel=1e-6)

    @pytest.mark.parametrize("a", [-0.95, -0.75, -0.5])
    def test_head_substitution_integrates_bare_weight(self, a):
        one = RealPoly.from_floats([1.0])
        assert inner_product("classical", 0, a, one, one).value == pytest.approx(math.gamma(a + 1), rel=1e-9)

    @pytest.mark.slow
    @pytest.mark.parametrize("family,m,n,a", _norm_grid())
    def test_full_norm_grid(self, family, m, n, a):
        assert norm_comparison(family, m, n, a).rel_error < 1e-8

    def test_classical(self):
        assert classical_norm_check(3, 0.5).rel_error < 1e-8
        assert classical_norm_check(4, -0.75).rel_error < 1e-8

    def test_zero_integrand(self):
        zero = RealPoly.from_floats([])
        result = inner_product("III", 1, -0.5, zero, RealPoly.from_floats([1.0]))
        assert result.value == 0.0


class TestGram:
    @pytest.mark.parametrize("family,m,a", [("I", 1, 0.5), ("II", 2, 1.5), ("III", 1, -0.5), ("III", 2, -0.25)])
    def test_orthogonal(self, family, m, a):
        degrees = DegreeSet(Family.parse(family), m).first(4)
        result = gram_matrix(family, m, a, degrees)
        assert result.matrix.shape == (4, 4)
        assert result.passed(1e-7), (result.diag_rel_errors, result.max_offdiag_rel)

    def test_strong_singularity_small_grid(self):
        result = gram_matrix("III", 1, -0.75, DegreeSet(Family.TYPE_III, 1).first(4))
        assert result.passed(1e-8), (result.diag_rel_errors, result.max_offdiag_rel)

    @pytest.mark.slow
    @pytest.mark.parametrize("family,m,a", _gram_grid())
    def test_full_gram_grid(self, family, m, a):
        degrees = DegreeSet(Family.parse(family), m).up_to(m + 8)
        result = gram_matrix(family, m, a, degrees)
        assert result.passed(1e-8), (result.diag_rel_errors, result.max_offdiag_rel)

    def test_projection_of_constant(self):
        residuals = projection_residuals(1, -0.5, 0, 3)
        assert len(residuals) == 3
        assert abs(residuals[0]) < 1e-7

    def test_projection_residuals_decrease(self):
        residuals = projection_residuals(1, -0.5, 2, 5)
        assert all(b <= a + 1e-9 for a, b in zip(residuals, residuals[1:]))
        assert residuals[-1] < residuals[0]

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [1, 2])
    @pytest.mark.parametrize("j", range(7))
    def test_projection_residuals_up_to_twelve_terms(self, m, j):
        residuals = projection_residuals(m, -0.5, j, 12)
        assert len(residuals) == 12
        slack = 1e-10 * max(residuals[0], 1.0)
        assert all(b <= a + slack for a, b in zip(residuals, residuals[1:]))
        assert residuals[-1] <= residuals[0]


class TestRootTheorems:
    @pytest.mark.parametrize("m,k,a", [(1, 1, -0.5), (1, 4, -0.5), (2, 3, -0.25), (3, 2, -0.75)])
    def test_type3_interlacing(self, m, k, a):
        report = interlacing_check(m, k, a)
        assert report.verdict
        assert len(report.positive_roots) == k
        assert len(report.negative_roots) == m

    @pytest.mark.parametrize("m,k", [(1, 20), (2, 20), (3, 20)])
    def test_type3_interlacing_high_degree(self, m, k):
        report = interlacing_check(m, k, -0.75)
        assert report.verdict
        assert all(report.interlacing)

    @pytest.mark.slow
    @pytest.mark.parametrize("a", TYPE3_ALPHAS)
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_type3_interlacing_grid(self, m, a):
        for k in range(1, 21):
            report = interlacing_check(m, k, a)
            assert report.verdict, (m, k, a)
            assert (len(report.positive_roots), len(report.negative_roots)) == (k, m)

    def test_type3_m1_k1_roots(self):
        report = interlacing_check(1, 1, -0.5)
        assert report.positive_roots == pytest.approx([0.20710678118654752], abs=1e-12)
        assert report.negative_roots == pytest.approx([-1.2071067811865475], abs=1e-12)
        assert report.reference_neg == pytest.approx([-0.5])
        assert report.as_dict()["verdict"] == "pass"

    def test_interlacing_domain(self):
        with pytest.raises(DomainError):
            interlacing_check(1, 1, 0.5)

    @pytest.mark.parametrize("m,k,a", [(1, 1, -0.5), (2, 3, -0.5), (3, 3, -0.25)])
    def test_critical_points(self, m, k, a):
        assert critical_points_check(m, k, a)

    @pytest.mark.parametrize("m,k,a", [(1, 2, 0.5), (2, 3, 1.5)])
    def test_type1_counts(self, m, k, a):
        report = type1_root_report(m, k, a)
        assert report.verdict
        assert report.expected_positive == k

    @pytest.mark.parametrize("m,n,a", [(1, 3, 0.5), (2, 4, 1.5), (3, 5, 2.5)])
    def test_type2_counts(self, m, n, a):
        report = type2_root_report(m, n, a)
        assert report.verdict
        assert len(report.complex_roots) == n - (n - m) - m % 2


class TestFamilyValue:
    @pytest.mark.parametrize("family,m,n,a", [("I", 2, 4, 0.5), ("II", 1, 3, 0.5), ("III", 2, 5, -0.5)])
    def test_matches_symbolic(self, family, m, n, a):
        p = substitute_alpha(exceptional_polynomial(family, m, n), a)
        for x in (0.2, 1.7, -0.9):
            assert float(family_value(family, m, n, a, x)) == pytest.approx(float(p(x)), rel=1e-10, abs=1e-12)


@pytest.mark.slow
class TestAsymptotics:
    def test_type3_exceptional_roots_settle(self):
        table = asymptotics_probe("III", 1, -0.5, [2, 8, 32])
        distance = table.columns["exceptional_distance"]
        assert len(distance) == 3
        assert distance[-1] < distance[0]
        assert table.columns["first_positive_root"][-1] < table.columns["first_positive_root"][0]

    def test_type1_scaled_roots(self):
        table = asymptotics_probe("I", 1, 0.5, [4, 16, 64])
        assert table.targets["scaled_root_1"] == pytest.approx(math.pi**2 / 4)
        assert table.terminal("scaled_root_1") < table.columns["scaled_root_1"][0]

    def test_k_must_increase(self):
        with pytest.raises(ValueError, match="increasing"):
            asymptotics_probe("III", 1, -0.5, [4, 2])
