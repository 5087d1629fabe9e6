"""Exact-arithmetic core: ring operations, division, derivatives,
special-value residues, and the text round trip.

Fixed expected values were computed by hand (polynomial expansion on
paper) before the implementation ran, and are asserted verbatim.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cnjones.laurent import (
    BracketPoly,
    ConwayPoly,
    CyclotomicResidue,
    HalfLaurent,
    LOOP_FACTOR,
    RationalHalfLaurent,
    derivative_at_one,
    eval_special,
    exact_divide,
    format_half_laurent,
    normalize_bracket,
    parse_half_laurent,
    t_minus_one,
    theorem_difference,
    unlink_jones,
)


def t_poly(d):
    return HalfLaurent.from_t_coeffs(d)


# Hand-expanded: (t-1)^3 * (t^2+t+1) * (t^2+1).
DIFF_3 = t_poly({7: 1, 6: -2, 5: 2, 4: -3, 3: 3, 2: -2, 1: 2, 0: -1})
# Hand-expanded: -(t-1)^4 * (t^2+t+1) * (t^2+1).
DIFF_4 = t_poly({8: -1, 7: 3, 6: -4, 5: 5, 4: -6, 3: 5, 2: -4, 1: 3, 0: -1})


class TestRing:
    def test_canonical_trim(self):
        assert HalfLaurent(3, (0, 0, 1, 2, 0)) == HalfLaurent(5, (1, 2))
        assert HalfLaurent(4, (0, 0)) == HalfLaurent.zero()
        assert not HalfLaurent.zero()

    def test_product(self):
        p = t_minus_one() * t_poly({3: 1, 0: -1})
        assert p == t_poly({4: 1, 3: -1, 1: -1, 0: 1})

    def test_pow_and_units(self):
        x = HalfLaurent.x()
        assert x ** -3 == HalfLaurent.x(-3)
        assert (2 * x).is_unit() is False
        with pytest.raises(ValueError):
            (x + 1) ** -1

    def test_int_mixing(self):
        p = HalfLaurent.t()
        assert 1 - p == t_poly({0: 1, 1: -1})
        assert (p + 1) - 1 == p
        assert 3 * p == p * 3 == t_poly({1: 3})

    def test_half_grid(self):
        p = HalfLaurent.x(5, -1)
        assert not p.has_only_integer_t_powers()
        assert p.mirror_t() == HalfLaurent.x(-5, -1)
        assert unlink_jones(3) == t_poly({1: 1, 0: 2, -1: 1})
        assert unlink_jones(1) == HalfLaurent.one()

    def test_coeff_access(self):
        p = DIFF_3
        assert p.coeff(14) == 1 and p.coeff(0) == -1 and p.coeff(1) == 0
        assert p.min_exp == 0 and p.max_exp == 14
        assert list(p.terms())[0] == (0, -1)


class TestTheoremDifference:
    def test_n3_expansion(self):
        assert theorem_difference(3) == DIFF_3

    def test_n4_expansion(self):
        assert theorem_difference(4) == DIFF_4

    def test_alternating_sign(self):
        for n in range(1, 9):
            lead = theorem_difference(n).coeff(2 * (n + 4))
            assert lead == (-1) ** (n + 1)

    def test_divisible_by_stated_factors(self):
        for n in range(1, 7):
            d = theorem_difference(n)
            q = exact_divide(d, t_minus_one() ** n * t_poly({2: 1, 1: 1, 0: 1}))
            assert q == t_poly({2: 1, 0: 1}) * (1 if n % 2 else -1)


class TestExactDivide:
    def test_known_quotient(self):
        num = t_poly({4: 1, 3: -1, 1: -1, 0: 1})  # (t-1)(t^3-1)
        assert exact_divide(num, t_minus_one() ** 2) == t_poly({2: 1, 1: 1, 0: 1})

    def test_failure_returns_none(self):
        assert exact_divide(t_poly({1: 1, 0: 1}), t_minus_one()) is None
        assert exact_divide(t_poly({1: 1}), t_poly({0: 2})) is None

    def test_zero_cases(self):
        assert exact_divide(HalfLaurent.zero(), t_minus_one()) == HalfLaurent.zero()
        with pytest.raises(ZeroDivisionError):
            exact_divide(t_minus_one(), HalfLaurent.zero())


class TestDerivative:
    def test_diff_operator(self):
        # d/dt of t^2 - t^(1/2) is 2t - (1/2) t^(-1/2).
        p = RationalHalfLaurent.from_half_laurent(t_poly({2: 1}) - HalfLaurent.x())
        q = p.d_dt()
        assert dict(q.terms()) == {2: Fraction(2), -1: Fraction(-1, 2)}

    def test_orders_on_difference(self):
        # (t-1)^3 divides DIFF_3, so orders 0..2 vanish at t = 1 and the
        # third derivative is 3! times the cofactor value 6.
        for k in range(3):
            assert derivative_at_one(DIFF_3, k) == 0
        assert derivative_at_one(DIFF_3, 3) == 36
        assert derivative_at_one(DIFF_4, 4) == -144

    def test_first_derivative_value(self):
        # V of the positive Hopf link; V'(1) = -3 * (-2)^0 * lk = -3.
        hopf = HalfLaurent.from_dict({1: -1, 5: -1})
        assert derivative_at_one(hopf, 1) == -3


class TestSpecialValues:
    TREFOIL = t_poly({1: 1, 3: 1, 4: -1})
    HOPF = HalfLaurent.from_dict({1: -1, 5: -1})

    def test_knot_points(self):
        assert eval_special(self.TREFOIL, "1").as_int() == 1
        assert eval_special(self.TREFOIL, "omega").as_int() == 1
        assert eval_special(self.TREFOIL, "i").as_int() == -1
        assert eval_special(self.TREFOIL, "-1").as_int() == -3

    def test_hopf_points(self):
        assert eval_special(self.HOPF, "1").as_int() == -2
        assert eval_special(self.HOPF, "omega").as_int() == -1
        # Total linking with the rest is odd for both components.
        assert eval_special(self.HOPF, "i").is_zero()
        v = eval_special(self.HOPF, "-1")
        assert v.as_int() is None and v.vec == (0, -2)  # -2i, determinant 2

    def test_residue_arithmetic(self):
        s = CyclotomicResidue.from_x_dict(8, {1: 1, 3: 1})  # x + x^3 at x=e^(i pi/4)
        assert (s * s).as_int() == -2
        assert s.norm_squared().as_int() == 2
        mixed = CyclotomicResidue.from_x_dict(8, {0: 1, 1: 1})
        assert mixed.as_int() is None
        assert mixed.norm_squared().as_int() is None  # |1+x|^2 = 2 + sqrt(2)
        assert (s - s).is_zero()

    def test_unknown_point(self):
        with pytest.raises(ValueError):
            eval_special(self.TREFOIL, "2")


class TestBracketSide:
    def test_loop_factor(self):
        assert LOOP_FACTOR == BracketPoly.a(2, -1) + BracketPoly.a(-2, -1)

    def test_normalize_positive_kink(self):
        # A diagram with one positive kink brackets to -A^3 at writhe 1.
        assert normalize_bracket(BracketPoly.a(3, -1), 1) == HalfLaurent.one()

    def test_normalize_parity_check(self):
        with pytest.raises(ValueError):
            normalize_bracket(BracketPoly.a(2), 1)

    def test_substitution_direction(self):
        # A^(-4) becomes t, A^4 becomes t^(-1).
        assert normalize_bracket(BracketPoly.a(-4), 0) == t_poly({1: 1})
        assert normalize_bracket(BracketPoly.a(4), 0) == t_poly({-1: 1})


class TestConwayPoly:
    def test_basics(self):
        p = ConwayPoly.z(2) + 1  # z^2 + 1, the trefoil value
        assert p.coefficient(2) == 1 and p.coefficient(1) == 0
        assert p.degree() == 2
        assert p.format() == "1 + z^2"

    def test_eval_residue(self):
        # z = -2i in Z[x]/(x^2+1): z^2 + 1 evaluates to -3.
        z0 = CyclotomicResidue.from_x_dict(4, {1: -2})
        p = ConwayPoly.z(2) + 1
        assert p.eval_residue(z0).as_int() == -3


class TestTextRoundTrip:
    CASES = [
        (HalfLaurent.zero(), "0"),
        (HalfLaurent.one(), "1"),
        (t_poly({-1: 1, 0: -1, 1: 2}), "t^-1 - 1 + 2*t"),
        (t_poly({1: 1, 3: 1, 4: -1}), "t + t^3 - t^4"),
        (HalfLaurent.from_dict({1: -1, 5: -1}), "-t^(1/2) - t^(5/2)"),
        (HalfLaurent.from_dict({-3: 2, 0: -7}), "2*t^(-3/2) - 7"),
    ]

    @pytest.mark.parametrize("poly,text", CASES)
    def test_format(self, poly, text):
        assert format_half_laurent(poly) == text

    @pytest.mark.parametrize("poly,text", CASES)
    def test_parse(self, poly, text):
        assert parse_half_laurent(text) == poly

    def test_parse_loose_whitespace(self):
        assert parse_half_laurent(" t^-1-1+2*t ") == t_poly({-1: 1, 0: -1, 1: 2})
        assert parse_half_laurent("3t") == t_poly({1: 3})

    def test_parse_rejects_garbage(self):
        for bad in ("", "t^", "2**t", "t + ", "q^2"):
            with pytest.raises(ValueError):
                parse_half_laurent(bad)


# ---------------------------------------------------------------------------
# Property suites.
# ---------------------------------------------------------------------------

half_laurents = st.builds(
    HalfLaurent,
    st.integers(min_value=-12, max_value=12),
    st.lists(st.integers(min_value=-9, max_value=9), max_size=10),
)
nonzero_half_laurents = half_laurents.filter(bool)


@settings(max_examples=300)
@given(half_laurents, half_laurents, half_laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + HalfLaurent.zero() == a
    assert a * HalfLaurent.one() == a
    assert a - a == HalfLaurent.zero()


@settings(max_examples=300)
@given(half_laurents, nonzero_half_laurents)
def test_exact_divide_round_trip(q, d):
    assert exact_divide(q * d, d) == q


@settings(max_examples=200)
@given(half_laurents, half_laurents)
def test_mirror_is_ring_map(a, b):
    assert (a * b).mirror_t() == a.mirror_t() * b.mirror_t()
    assert (a + b).mirror_t() == a.mirror_t() + b.mirror_t()
    assert a.mirror_t().mirror_t() == a


@settings(max_examples=200)
@given(half_laurents, half_laurents, st.sampled_from(["1", "omega", "i", "-1"]))
def test_eval_special_is_ring_map(a, b, point):
    ea, eb = eval_special(a, point), eval_special(b, point)
    assert eval_special(a * b, point) == ea * eb
    assert eval_special(a + b, point) == ea + eb


@settings(max_examples=200)
@given(half_laurents, half_laurents)
def test_derivative_product_rule(a, b):
    lhs = derivative_at_one(a * b, 1)
    rhs = (derivative_at_one(a, 1) * eval_special(b, "1").as_int()
           + eval_special(a, "1").as_int() * derivative_at_one(b, 1))
    assert lhs == rhs


@settings(max_examples=200)
@given(half_laurents)
def test_text_round_trip(p):
    assert parse_half_laurent(format_half_laurent(p)) == p
