"""Tests for exceptional.py -- Types I/II/III, representations, operators and lemmas."""

from __future__ import annotations

from fractions import Fraction

import pytest

from xlaguerre.classical import LaguerreIndex, laguerre
from xlaguerre.core import RatFunc, XPoly, parse_xpoly
from xlaguerre.errors import DegreeNotAdmissible, DomainError, NotDivisible
from xlaguerre.exceptional import (
    DegreeSet,
    Family,
    FirstOrderOp,
    apply_first_order,
    apply_first_order_poly,
    critical_factor_check,
    exceptional_polynomial,
    lemma1_check,
    lemma2_check,
    negativity_at_zero_check,
    representation_check,
    type1_from_operator,
    type2_from_operator,
    type3_constant,
    type3_subspace_check,
    xlag1,
    xlag2,
    xlag3,
    xlag3_alt,
    xlag3_integral,
)


class TestFamily:
    @pytest.mark.parametrize(
        "text,expected",
        [("I", Family.TYPE_I), ("ii", Family.TYPE_II), ("Type III", Family.TYPE_III), ("classical", Family.CLASSICAL)],
    )
    def test_parse(self, text, expected):
        assert Family.parse(text) is expected

    def test_parse_unknown(self):
        with pytest.raises(ValueError, match="unknown family"):
            Family.parse("IV")

    def test_check_alpha(self):
        Family.TYPE_III.check_alpha(1, -0.5)
        Family.TYPE_II.check_alpha(2, 1.5)
        with pytest.raises(DomainError, match="Type III"):
            Family.TYPE_III.check_alpha(1, 0.5)
        with pytest.raises(DomainError):
            Family.TYPE_II.check_alpha(2, 1.0)
        with pytest.raises(DomainError):
            Family.TYPE_I.check_alpha(1, 0.0)


class TestDegreeSet:
    def test_type3_skips_one_to_m(self):
        ds = DegreeSet(Family.TYPE_III, 2)
        assert ds.first(4) == [0, 3, 4, 5]
        assert list(ds.excluded) == [1, 2]

    def test_type1_and_type2_start_at_m(self):
        assert DegreeSet(Family.TYPE_I, 2).up_to(4) == [2, 3, 4]
        assert DegreeSet(Family.TYPE_II, 0).up_to(2) == [0, 1, 2]

    def test_excluded_degree_message(self):
        with pytest.raises(DegreeNotAdmissible, match="degree 1 excluded for Type III, m=2"):
            xlag3(2, 1)

    def test_minimum_m(self):
        with pytest.raises(ValueError, match="m >= 1"):
            DegreeSet(Family.TYPE_III, 0)


class TestType1:
    def test_degree_m_is_reflected_laguerre(self):
        assert xlag1(1, 1) == parse_xpoly("1 + a + x")
        assert xlag1(3, 3) == laguerre(3, reflected=True)

    def test_m1_n2(self):
        assert xlag1(1, 2) == parse_xpoly("-x^2 + a*(a+2)")

    def test_n_below_m_rejected(self):
        with pytest.raises(DegreeNotAdmissible):
            xlag1(2, 1)

    @pytest.mark.parametrize("m,n", [(1, 1), (1, 4), (2, 5), (3, 4)])
    def test_operator_form(self, m, n):
        assert type1_from_operator(m, n) == xlag1(m, n)


class TestType2:
    def test_m0_is_proportional_to_classical(self):
        assert xlag2(0, 0) == parse_xpoly("-(a+1)")
        assert xlag2(0, 1) == parse_xpoly("(a+2)*(x - a - 1)")
        for n in range(5):
            assert xlag2(0, n) == laguerre(n).scale(parse_xpoly(f"-({n}+a+1)").leading)

    def test_m1_n1(self):
        assert xlag2(1, 1) == parse_xpoly("a*(a + 1 + x)")

    @pytest.mark.parametrize("m,n", [(0, 2), (1, 1), (2, 4), (3, 5)])
    def test_operator_form(self, m, n):
        assert type2_from_operator(m, n) == xlag2(m, n)


class TestType3:
    def test_published_values(self):
        assert xlag3(1, 0) == XPoly.const(1)
        assert xlag3(1, 2) == parse_xpoly("x^2 - 2*a*x + a*(a+1)")
        assert xlag3(1, 3) == parse_xpoly("-x^3 + 3*(a+1)*x^2 - 3*a*(a+2)*x + a*(a+1)*(a+2)")
        assert xlag3(2, 3) == parse_xpoly(
            "1/2*x^3 - 3/2*(a-1)*x^2 + 3/2*a*(a-1)*x - 1/2*a*(a-1)*(a+1)"
        )

    def test_matches_appendix_table(self, appendix_entries):
        assert len(appendix_entries) == 15
        for entry in appendix_entries:
            assert xlag3(entry["m"], entry["n"]) == parse_xpoly(entry["poly"]), entry

    def test_degree_is_exact(self):
        for m in (1, 2, 3):
            for n in DegreeSet(Family.TYPE_III, m).first(5):
                assert xlag3(m, n).degree == n

    @pytest.mark.parametrize("m", [1, 2, 4])
    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_all_representations_agree(self, m, k):
        result = representation_check(m, m + k)
        assert result == {"alternative": True, "integral": True, "operator": True, "degree": True}

    def test_alternative_and_integral_reject_zero_degree(self):
        with pytest.raises(DegreeNotAdmissible):
            xlag3_alt(1, 0)
        with pytest.raises(DegreeNotAdmissible):
            xlag3_integral(1, 0)

    def test_constant_term(self):
        for m, k in ((1, 1), (2, 3), (3, 2)):
            assert xlag3(m, m + k).at_x(0) == type3_constant(m, k)

    def test_dispatch(self):
        assert exceptional_polynomial("III", 1, 2) == xlag3(1, 2)
        assert exceptional_polynomial(Family.CLASSICAL, 0, 3) == laguerre(3)


class TestFirstOrderOperators:
    def test_a3_on_constant(self):
        op = FirstOrderOp(Family.TYPE_III, "A", 1, 1)
        one = laguerre(0, LaguerreIndex.plus(1))
        assert apply_first_order(op, one) == -xlag3(1, 2)

    def test_b3_polynomial_output(self):
        op = FirstOrderOp(Family.TYPE_III, "B", 1, 1)
        assert apply_first_order_poly(op, xlag3(1, 2)) == XPoly.const(2)

    def test_b3_kills_constants(self):
        op = FirstOrderOp(Family.TYPE_III, "B", 2)
        assert apply_first_order(op, XPoly.const(1)) == RatFunc.of(0, 1)

    def test_b_variant_returns_ratfunc(self):
        op = FirstOrderOp(Family.TYPE_I, "B", 1)
        assert isinstance(apply_first_order(op, XPoly.x()), RatFunc)

    def test_polynomial_output_rejects_remainder(self):
        op = FirstOrderOp(Family.TYPE_III, "B", 1)
        with pytest.raises(NotDivisible):
            apply_first_order_poly(op, XPoly.x() ** 2)

    def test_rejects_classical(self):
        with pytest.raises(ValueError, match="no A/B"):
            FirstOrderOp(Family.CLASSICAL, "A", 1)

    def test_str(self):
        assert str(FirstOrderOp(Family.TYPE_III, "A", 2, 1)) == "A^{III,a+1}_2"


class TestLemmas:
    @pytest.mark.parametrize("m,k", [(1, 1), (2, 3), (3, 4), (1, 6)])
    def test_derivative_factorization(self, m, k):
        assert lemma2_check(m, k)
        assert critical_factor_check(m, k)

    @pytest.mark.parametrize("m,k", [(1, 1), (2, 2), (1, 4), (3, 3)])
    def test_key_relationship(self, m, k):
        assert lemma1_check(m, k)

    def test_lemma_domain(self):
        with pytest.raises(ValueError):
            lemma2_check(0, 1)
        with pytest.raises(ValueError):
            lemma1_check(1, 0)

    @pytest.mark.parametrize("m,k,a", [(1, 1, -0.5), (2, 1, -0.5), (1, 3, -0.25), (3, 2, Fraction(-1, 3))])
    def test_negative_at_zero(self, m, k, a):
        assert negativity_at_zero_check(m, k, a)

    @pytest.mark.parametrize("a", [Fraction(-3, 4), Fraction(-1, 2), Fraction(-1, 4)])
    def test_negative_at_zero_over_grid(self, a):
        for m in (1, 2, 3):
            for k in range(1, 21):
                assert negativity_at_zero_check(m, k, a), (m, k)

    def test_negative_at_zero_domain(self):
        with pytest.raises(DomainError):
            negativity_at_zero_check(1, 1, 0.5)


class TestType3Subspace:
    @pytest.mark.parametrize("m", [1, 2])
    def test_polynomials_land_in_span(self, m):
        for p in (XPoly.const(1), XPoly.x(), parse_xpoly("x^3 - 2*x + 1")):
            assert type3_subspace_check(m, p, Fraction(-1, 2))
