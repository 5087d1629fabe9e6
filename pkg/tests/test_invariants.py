"""Invariant engines: bracket vs skein cross-checks, anchor values, and
the derived invariants.

Anchor polynomials were computed by hand with the skein relation (or
taken as the standard table values) and frozen before the engines ran.
"""

import pytest

from cnjones.diagram import (
    OrientedDiagram,
    connected_sum,
    crossing_change,
    crossing_sign,
    mirror,
    oriented_smoothing,
    split_union,
)
from cnjones.invariants import (
    CROSSING_LIMIT_ENV,
    CrossingLimitError,
    InvariantError,
    arf_knot,
    coefficient_a,
    conway,
    crossing_limit,
    jones,
    jones_skein,
    kauffman_bracket,
    simplified_polynomial,
    special_values,
)
from cnjones.laurent import (
    BracketPoly,
    ConwayPoly,
    HalfLaurent,
    eval_special,
    unlink_jones,
)
from helpers import (
    FIGURE_EIGHT,
    HOPF_POS,
    KINK_NEG,
    KINK_POS,
    TORUS_24,
    TREFOIL,
    UNKNOT,
)

t_poly = HalfLaurent.from_t_coeffs
x_poly = HalfLaurent.from_dict

V_TREFOIL = t_poly({1: 1, 3: 1, 4: -1})
V_HOPF_POS = x_poly({1: -1, 5: -1})
V_FIGURE_EIGHT = t_poly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
V_TORUS_24 = x_poly({3: -1, 7: -1, 9: 1, 11: -1})

ANCHORS = [
    (UNKNOT, HalfLaurent.one()),
    (TREFOIL, V_TREFOIL),
    (HOPF_POS, V_HOPF_POS),
    (FIGURE_EIGHT, V_FIGURE_EIGHT),
    (TORUS_24, V_TORUS_24),
    (KINK_POS, HalfLaurent.one()),
    (KINK_NEG, HalfLaurent.one()),
]


class TestJones:
    @pytest.mark.parametrize("d,expected", ANCHORS, ids=lambda v: getattr(v, "name", ""))
    def test_anchor_values(self, d, expected):
        assert jones(d) == expected

    @pytest.mark.parametrize("d,expected", ANCHORS, ids=lambda v: getattr(v, "name", ""))
    def test_skein_engine_agrees(self, d, expected):
        assert jones_skein(d) == expected

    def test_hopf_bracket(self):
        assert kauffman_bracket(HOPF_POS) == BracketPoly.a(4, -1) + BracketPoly.a(-4, -1)

    def test_mirror_conjugates(self):
        for d in (TREFOIL, HOPF_POS, TORUS_24):
            assert jones(mirror(d)) == jones(d).mirror_t()
        assert jones(mirror(FIGURE_EIGHT)) == V_FIGURE_EIGHT  # amphichiral

    def test_unlinks(self):
        for r in range(1, 5):
            assert jones(OrientedDiagram((), (), r)) == unlink_jones(r)

    def test_split_union_factor(self):
        u = split_union(TREFOIL, HOPF_POS)
        expected = unlink_jones(2) * V_TREFOIL * V_HOPF_POS
        assert jones(u) == expected
        assert jones_skein(u) == expected

    def test_connected_sum_multiplies(self):
        s = connected_sum(TREFOIL, 1, TREFOIL, 1)
        assert jones(s) == V_TREFOIL * V_TREFOIL
        square_knot = connected_sum(TREFOIL, 1, mirror(TREFOIL), 1)
        assert jones(square_knot) == V_TREFOIL * V_TREFOIL.mirror_t()
        links = connected_sum(HOPF_POS, 1, HOPF_POS, 3)
        assert jones(links) == V_HOPF_POS * V_HOPF_POS

    def test_parity_of_exponents(self):
        # Odd component count <=> integer powers of t only.
        assert jones(TREFOIL).has_only_integer_t_powers()
        assert jones(OrientedDiagram((), (), 3)).has_only_integer_t_powers()
        assert not jones(HOPF_POS).has_only_integer_t_powers()
        assert not jones(TORUS_24).has_only_integer_t_powers()


class TestSkeinRelations:
    def test_jones_triple(self):
        x = HalfLaurent.x
        for d in (TREFOIL, HOPF_POS, TORUS_24, FIGURE_EIGHT):
            for i in range(d.n_crossings):
                if crossing_sign(d, i) > 0:
                    plus, minus = d, crossing_change(d, i)
                else:
                    plus, minus = crossing_change(d, i), d
                zero = oriented_smoothing(d, i)
                lhs = x(-2) * jones(plus) - x(2) * jones(minus)
                rhs = (x(1) - x(-1)) * jones(zero)
                assert lhs == rhs

    def test_conway_triple(self):
        z = ConwayPoly.z()
        for d in (TREFOIL, TORUS_24, FIGURE_EIGHT):
            for i in range(d.n_crossings):
                if crossing_sign(d, i) > 0:
                    plus, minus = d, crossing_change(d, i)
                else:
                    plus, minus = crossing_change(d, i), d
                zero = oriented_smoothing(d, i)
                assert conway(plus) - conway(minus) == z * conway(zero)


class TestConway:
    CASES = [
        (UNKNOT, ConwayPoly.one()),
        (TREFOIL, ConwayPoly.z(2) + 1),
        (FIGURE_EIGHT, 1 - ConwayPoly.z(2)),
        (HOPF_POS, ConwayPoly.z()),
        (TORUS_24, ConwayPoly.z(3) + ConwayPoly.z(1, 2)),
        (KINK_NEG, ConwayPoly.one()),
    ]

    @pytest.mark.parametrize("d,expected", CASES, ids=lambda v: getattr(v, "name", ""))
    def test_values(self, d, expected):
        assert conway(d) == expected

    def test_split_links_vanish(self):
        assert conway(split_union(TREFOIL, HOPF_POS)) == ConwayPoly.zero()
        assert conway(OrientedDiagram((), (), 2)) == ConwayPoly.zero()

    def test_mirror_parity(self):
        # Mirroring negates z in the Conway polynomial.
        for d in (TREFOIL, HOPF_POS, TORUS_24):
            p = conway(d)
            flipped = ConwayPoly(p.val, tuple(
                c if (p.val + k) % 2 == 0 else -c
                for k, c in enumerate(p.coeffs)))
            assert conway(mirror(d)) == flipped

    def test_coefficient_access(self):
        assert coefficient_a(TREFOIL, 2) == 1
        assert coefficient_a(FIGURE_EIGHT, 2) == -1
        assert coefficient_a(TREFOIL, 5) == 0


class TestSpecialValues:
    def test_trefoil(self):
        sv = special_values(TREFOIL)
        assert sv.components == 1 and sv.proper
        assert sv.at_one == 1 and sv.at_omega == 1
        assert sv.at_i.as_int() == -1
        assert sv.determinant == 3
        assert sv.derivative_at_one == 0

    def test_hopf(self):
        sv = special_values(HOPF_POS)
        assert sv.components == 2 and not sv.proper
        assert sv.at_one == -2 and sv.at_omega == -1
        assert sv.at_i.is_zero()
        assert sv.determinant == 2
        assert sv.derivative_at_one == -3

    def test_torus_24(self):
        sv = special_values(TORUS_24)
        assert sv.proper and sv.total_linking == 2
        assert sv.at_one == -2
        assert sv.at_i.norm_squared().as_int() == 2
        assert sv.derivative_at_one == -6

    def test_figure_eight(self):
        sv = special_values(FIGURE_EIGHT)
        assert sv.determinant == 5
        assert sv.at_minus_one.as_int() == 5


class TestDerivedInvariants:
    def test_arf(self):
        assert arf_knot(TREFOIL) == 1
        assert arf_knot(FIGURE_EIGHT) == 1
        assert arf_knot(UNKNOT) == 0
        assert arf_knot(connected_sum(TREFOIL, 1, TREFOIL, 1)) == 0

    def test_arf_rejects_links(self):
        with pytest.raises(InvariantError, match="knots only"):
            arf_knot(HOPF_POS)

    def test_simplified_polynomial(self):
        assert simplified_polynomial(UNKNOT) == HalfLaurent.zero()
        assert simplified_polynomial(TREFOIL) == HalfLaurent.one()
        assert simplified_polynomial(FIGURE_EIGHT) == t_poly({-2: -1})

    def test_simplified_polynomial_rejects_links(self):
        with pytest.raises(InvariantError, match="knots only"):
            simplified_polynomial(HOPF_POS)


class TestCrossingLimit:
    def test_limit_enforced(self):
        with pytest.raises(CrossingLimitError):
            jones(TREFOIL, limit=2)
        with pytest.raises(CrossingLimitError):
            conway(TORUS_24, limit=3)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv(CROSSING_LIMIT_ENV, "2")
        assert crossing_limit() == 2
        with pytest.raises(CrossingLimitError):
            kauffman_bracket(TREFOIL)
        assert jones(TREFOIL, limit=10) == V_TREFOIL  # explicit beats env
        monkeypatch.setenv(CROSSING_LIMIT_ENV, "not a number")
        with pytest.raises(ValueError):
            crossing_limit()

    def test_simplification_happens_first(self, monkeypatch):
        # jones() reduces before counting: a 3-crossing diagram of the
        # unknot passes a limit of 0.
        stacked = OrientedDiagram(
            ((1, 2, 2, 3), (3, 1, 4, 4)),
            ((1, 2, 3, 4),),
        )
        assert jones(stacked, limit=0) == HalfLaurent.one()


class TestEngineAgreement:
    def test_on_composites(self):
        diagrams = [
            connected_sum(TREFOIL, 2, HOPF_POS, 3),
            split_union(FIGURE_EIGHT, HOPF_POS),
            crossing_change(TORUS_24, 1),
            oriented_smoothing(FIGURE_EIGHT, 0),
            mirror(connected_sum(TREFOIL, 1, TREFOIL, 4)),
        ]
        for d in diagrams:
            assert jones(d) == jones_skein(d)

    def test_jones_at_minus_one_matches_conway(self):
        # Handled inside special_values; run it over everything valid.
        for d in (UNKNOT, TREFOIL, HOPF_POS, TORUS_24, FIGURE_EIGHT, KINK_POS):
            special_values(d)
