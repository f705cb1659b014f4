from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stabregion.polynomials import (
    BiPoly,
    DegenerateInstanceError,
    InexactDivisionError,
    LeadingCoefficientError,
    UniPoly,
    content,
    eval_bipoly,
    eval_poly,
    format_rational,
    normalize_monic,
    parse_rational,
    poly_gcd,
    primitive_part,
    split_real_imag,
)

from conftest import spoly, tpoly


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=6)


def polys(max_degree=8, var="t"):
    return st.lists(rationals, min_size=0, max_size=max_degree + 1).map(
        lambda cs: UniPoly(cs, var)
    )


class TestParseRational:
    def test_fraction_strings(self):
        assert parse_rational("-3/10") == Fraction(-3, 10)
        assert parse_rational("42") == 42
        assert parse_rational(7) == 7

    @pytest.mark.parametrize("bad", ["1.5", "2e3", "", "1/0", 0.25])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_format_round_trip(self):
        for text in ["-3/10", "0", "17", "5/3"]:
            assert format_rational(parse_rational(text)) == text


class TestUniPolyBasics:
    def test_trims_trailing_zeros(self):
        assert UniPoly((1, 2, 0, 0)).coeffs == (1, 2)

    def test_zero_degree_sentinel(self):
        assert UniPoly(()).degree == float("-inf")
        assert UniPoly((0, 0)).is_zero

    def test_gcd_monic(self):
        # common factor by construction
        assert poly_gcd(tpoly(0, 13, 1), tpoly(13, 1)) == tpoly(13, 1)

    def test_multiply_by_zero_annihilates(self):
        assert (tpoly(-5, 0, 1) * UniPoly((), "t")).is_zero

    def test_exact_divide(self):
        assert tpoly(-90, 18).exact_div(tpoly(-5, 1)) == tpoly(18)

    def test_exact_divide_rejects_remainder(self):
        with pytest.raises(InexactDivisionError):
            tpoly(1, 1).exact_div(tpoly(0, 1))

    def test_divide_by_zero_poly(self):
        with pytest.raises(ZeroDivisionError):
            divmod(tpoly(1, 1), UniPoly((), "t"))

    def test_mixed_vars_rejected(self):
        with pytest.raises(ValueError):
            spoly(0, 1) * tpoly(0, 1)

    def test_content_primitive(self):
        p = UniPoly((Fraction(2, 3), Fraction(4, 3)), "t")
        assert content(p) == Fraction(2, 3)
        assert primitive_part(p) == tpoly(1, 2)

    def test_eval(self):
        assert eval_poly(tpoly(0, 13, 1), 1) == 14
        assert eval_poly(tpoly(-5, 1), 5) == 0


class TestRingAxioms:
    @settings(max_examples=60, deadline=None)
    @given(polys(5), polys(5), polys(5))
    def test_distributivity(self, a, b, c):
        assert (a + b) * c == a * c + b * c

    @settings(max_examples=60, deadline=None)
    @given(polys(5), polys(5))
    def test_commutativity(self, a, b):
        assert a * b == b * a
        assert a + b == b + a

    @settings(max_examples=40, deadline=None)
    @given(polys(4), polys(4))
    def test_divmod_reconstruction(self, a, b):
        if b.is_zero:
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree

    @settings(max_examples=40, deadline=None)
    @given(polys(3), polys(3), polys(3))
    def test_gcd_of_common_multiple(self, a, b, g):
        if g.is_zero or a.is_zero or b.is_zero:
            return
        if poly_gcd(a, b).degree != 0:
            return
        got = poly_gcd(a * g, b * g)
        assert got == g.monic()


class TestSplitRealImag:
    def test_nn1_members(self):
        p_r, p_i = split_real_imag(spoly(0, -13, 0, 1))  # s^3 - 13 s
        assert p_r.is_zero
        assert p_i == tpoly(-13, -1)

    def test_first_order(self):
        p_r, p_i = split_real_imag(spoly(1, 1))
        assert p_r == tpoly(1)
        assert p_i == tpoly(1)

    def test_constant(self):
        p_r, p_i = split_real_imag(spoly(1))
        assert p_r == tpoly(1)
        assert p_i.is_zero

    @settings(max_examples=60, deadline=None)
    @given(polys(8, var="s"), rationals)
    def test_reconstruction_identity(self, p, w):
        # p(jw) = pR(w^2) + j*w*pI(w^2), checked in exact complex-rational
        # arithmetic: real and imaginary parts computed separately.
        p_r, p_i = split_real_imag(p)
        t = w * w
        re = Fraction(0)
        im = Fraction(0)
        for m, c in enumerate(p.coeffs):
            quarter = m % 4
            power = c * w**m
            if quarter == 0:
                re += power
            elif quarter == 1:
                im += power
            elif quarter == 2:
                re -= power
            else:
                im -= power
        assert p_r.eval(t) == re
        assert w * p_i.eval(t) == im


class TestNormalizeMonic:
    def test_accepts_monic_unchanged(self, nn1):
        assert nn1.p0 == spoly(0, -13, 0, 1)
        assert nn1.p1 == spoly(0, -5, 1)
        assert nn1.p2 == spoly(1, 1)

    def test_uniform_scaling(self):
        inst = normalize_monic(spoly(0, 0, 0, 2), spoly(0, 2), spoly(2))
        assert inst.p0 == spoly(0, 0, 0, 1)
        assert inst.p1 == spoly(0, 1)
        assert inst.p2 == spoly(1)

    def test_degree_violation(self):
        with pytest.raises(LeadingCoefficientError):
            normalize_monic(spoly(0, 0, 1), spoly(0, 0, 1), spoly(1))

    def test_constant_ratio_rejected(self):
        with pytest.raises(DegenerateInstanceError):
            normalize_monic(spoly(0, 0, 1), spoly(0, 2), spoly(0, 3))

    def test_zero_direction_rejected(self):
        with pytest.raises(DegenerateInstanceError):
            normalize_monic(spoly(0, 0, 1), UniPoly((), "s"), spoly(1))

    def test_poly_at(self, nn1):
        assert nn1.poly_at(2, 47) == spoly(47, 24, 2, 1)


class TestBiPoly:
    def test_eval_paper_curve_polynomial(self):
        # -13 k1 - k2 - 5 k1^2 + k1 k2 at (1, 20): -13 - 20 - 5 + 20 = -18
        g = BiPoly({(1, 0): -13, (0, 1): -1, (2, 0): -5, (1, 1): 1})
        assert eval_bipoly(g, (1, 20)) == -18

    def test_zero_terms_dropped(self):
        assert BiPoly({(1, 0): 0, (0, 0): 1}) == BiPoly.constant(1)
        assert BiPoly({(2, 2): Fraction(0)}).is_zero

    def test_arithmetic(self):
        a = BiPoly.affine(1, 2, 3)
        b = BiPoly.affine(0, -2, 1)
        assert a + b == BiPoly.affine(1, 0, 4)
        assert (a - a).is_zero
        prod = a * b
        assert prod.coefficient(1, 1) == 2 * 1 + 3 * (-2)
        assert prod.eval(5, 7) == a.eval(5, 7) * b.eval(5, 7)

    def test_leading_term_lex(self):
        q = BiPoly({(1, 1): 4, (2, 0): -5, (0, 2): 9})
        assert q.leading_term() == ((2, 0), Fraction(-5))
