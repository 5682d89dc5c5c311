"""Tests for ode.py -- expressions, eigen residuals, factorizations, seeds and weights."""

from __future__ import annotations

import math

import pytest

from xlaguerre.core import AlphaPoly, XPoly, parse_xpoly
from xlaguerre.errors import DegreeNotAdmissible, DomainError
from xlaguerre.exceptional import DegreeSet, Family
from xlaguerre.ode import (
    SeedTag,
    adjoint_relation_check,
    conjugate_by_power,
    darboux_family_check,
    eigen_residual,
    expression_for,
    factorization_identity_check,
    family_denominator,
    gauge_check,
    ground_state_check,
    s_operator_eigen_check,
    seed_eigenvalue_check,
    seed_function,
    symmetric_form_check,
    weight_eval,
)

ALPHA = AlphaPoly.alpha()
EXCEPTIONAL = (Family.TYPE_I, Family.TYPE_II, Family.TYPE_III)


class TestExpressions:
    def test_eigenvalues(self):
        assert expression_for("I", 2).eigenvalue(5) == AlphaPoly.const(3)
        assert expression_for("III", 1).eigenvalue(2) == ALPHA + 1
        assert expression_for("III", 1, shifted=True).eigenvalue(2) == AlphaPoly.const(0)
        assert expression_for("classical").eigenvalue(4) == AlphaPoly.const(4)

    def test_eigenvalue_rejects_excluded_degree(self):
        with pytest.raises(DegreeNotAdmissible):
            expression_for("III", 2).eigenvalue(1)

    def test_shifted_only_for_type3(self):
        with pytest.raises(ValueError, match="shifted"):
            expression_for("I", 1, shifted=True)

    def test_minimum_m(self):
        with pytest.raises(ValueError, match="m >= 1"):
            expression_for("III", 0)

    def test_leading_coefficient_is_minus_x(self):
        for family in EXCEPTIONAL:
            assert expression_for(family, 2).a2.as_poly() == -XPoly.x()

    def test_denominators(self):
        assert family_denominator(Family.TYPE_III, 1) == parse_xpoly("x - a")
        assert family_denominator(Family.CLASSICAL, 0) == XPoly.const(1)

    def test_conjugate_by_zero_is_identity(self):
        e = expression_for("II", 1)
        assert conjugate_by_power(e, 0).same_coefficients(e)


class TestEigenResidual:
    @pytest.mark.parametrize("family", EXCEPTIONAL)
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_exceptional_polynomials_are_eigenfunctions(self, family, m):
        for n in DegreeSet(family, m).first(4):
            assert eigen_residual(family, m, n).is_zero, (family, m, n)

    def test_type2_m0(self):
        for n in range(4):
            assert eigen_residual("II", 0, n).is_zero

    def test_shifted_type3(self):
        for n in DegreeSet(Family.TYPE_III, 2).first(4):
            assert eigen_residual("III", 2, n, shifted=True).is_zero

    def test_classical(self):
        for n in range(5):
            assert eigen_residual("classical", 0, n).is_zero


class TestFactorizations:
    @pytest.mark.parametrize("family", EXCEPTIONAL)
    @pytest.mark.parametrize("m", [1, 2])
    def test_both_identities(self, family, m):
        assert factorization_identity_check(family, m, 4)

    def test_basis_too_small(self):
        with pytest.raises(ValueError, match="at least 2"):
            factorization_identity_check("I", 1, 1)

    def test_classical_rejected(self):
        with pytest.raises(ValueError):
            factorization_identity_check("classical", 0, 3)

    @pytest.mark.parametrize("family", EXCEPTIONAL)
    def test_adjoint_relation(self, family):
        for m in (1, 2, 3):
            assert adjoint_relation_check(family, m)


class TestDarboux:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_types_1_and_2_reappear_exactly(self, m):
        for family in (Family.TYPE_I, Family.TYPE_II):
            result = darboux_family_check(family, m)
            assert result.passed
            assert result.a0_offset.is_zero

    @pytest.mark.parametrize("m", [1, 2])
    def test_type3_reappears_lowered_by_alpha(self, m):
        result = darboux_family_check("III", m)
        assert result.passed
        assert result.seed is SeedTag.PHI3
        assert result.a0_offset == -ALPHA

    def test_classical_rejected(self):
        with pytest.raises(ValueError):
            darboux_family_check("classical", 1)


class TestSeeds:
    @pytest.mark.parametrize("tag", list(SeedTag))
    @pytest.mark.parametrize("m", [0, 1, 3])
    def test_seed_eigenvalues(self, tag, m):
        assert seed_eigenvalue_check(seed_function(tag, m))

    def test_seed_eigenvalue_values(self):
        assert seed_function("phi1", 2).eigenvalue == AlphaPoly.linear(-1, -3)
        assert seed_function("phi3", 2).eigenvalue == AlphaPoly.const(-3)

    def test_negative_m(self):
        with pytest.raises(ValueError):
            seed_function("phi0", -1)


class TestGauge:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_type1_conjugates_to_type3(self, m):
        assert gauge_check(m, 4)

    def test_basis_too_small(self):
        with pytest.raises(ValueError):
            gauge_check(1, 1)

    @pytest.mark.parametrize("m", [1, 2])
    def test_state_adding_operator(self, m):
        for n in DegreeSet(Family.TYPE_III, m).first(4):
            assert s_operator_eigen_check(m, n)

    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_ground_states(self, m):
        assert ground_state_check(m)


class TestWeights:
    def test_type3_value(self):
        assert weight_eval("III", 1, -0.5, 1.0) == pytest.approx(math.exp(-1) / 2.25)

    def test_classical_value(self):
        assert weight_eval("classical", 0, 0.5, 4.0) == pytest.approx(2 * math.exp(-4))

    def test_rejects_nonpositive_x(self):
        with pytest.raises(DomainError):
            weight_eval("I", 1, 0.5, 0.0)

    def test_rejects_alpha_outside_range(self):
        with pytest.raises(DomainError):
            weight_eval("III", 1, 0.5, 1.0)


class TestSymmetricForm:
    @pytest.mark.parametrize(
        "family,m,a",
        [("I", 1, 0.5), ("I", 2, 1.5), ("II", 2, 1.5), ("II", 0, 0.5), ("III", 1, -0.5), ("III", 2, -0.25),
         ("classical", 0, 0.5)],
    )
    def test_matches_expression(self, family, m, a):
        assert symmetric_form_check(family, m, a, [0.3, 1.0, 2.5])
