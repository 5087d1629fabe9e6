"""Exact link invariants computed from oriented diagrams.

Two independent engines compute the Jones polynomial: a Kauffman
bracket state sum (the default) and a skein-relation recursion; the
Conway polynomial comes from the analogous skein recursion.  Everything
is exact integer arithmetic, and the special-value report checks each
computed quantity against the identities it must satisfy, raising
InvariantError whenever a cross-check fails.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .diagram import (
    OrientedDiagram,
    _signs,
    crossing_change,
    linking_data,
    oriented_smoothing,
    simplify,
    writhe,
)
from .laurent import (
    BracketPoly,
    ConwayPoly,
    CyclotomicResidue,
    HalfLaurent,
    LOOP_FACTOR,
    derivative_at_one,
    eval_special,
    exact_divide,
    normalize_bracket,
    unlink_jones,
)

__all__ = [
    "CrossingLimitError",
    "InvariantError",
    "DEFAULT_CROSSING_LIMIT",
    "CROSSING_LIMIT_ENV",
    "crossing_limit",
    "kauffman_bracket",
    "jones",
    "jones_skein",
    "conway",
    "coefficient_a",
    "SpecialValues",
    "special_values",
    "arf_knot",
    "simplified_polynomial",
]

DEFAULT_CROSSING_LIMIT = 26
CROSSING_LIMIT_ENV = "CNJONES_CROSSING_LIMIT"


class CrossingLimitError(RuntimeError):
    """The diagram exceeds the configured crossing budget."""


class InvariantError(RuntimeError):
    """A computed invariant violates an identity it must satisfy."""


def crossing_limit(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(CROSSING_LIMIT_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{CROSSING_LIMIT_ENV} must be an integer, got {env!r}")
    return DEFAULT_CROSSING_LIMIT


def _check_limit(d: OrientedDiagram, limit) -> None:
    lim = crossing_limit(limit)
    if d.n_crossings > lim:
        raise CrossingLimitError(
            f"{d.n_crossings} crossings exceed the limit of {lim} "
            f"(raise it via {CROSSING_LIMIT_ENV} or --crossing-limit)")


# ---------------------------------------------------------------------------
# Kauffman bracket state sum.
# ---------------------------------------------------------------------------


def kauffman_bracket(d: OrientedDiagram, limit=None) -> BracketPoly:
    """The Kauffman bracket of the diagram as given (no simplification).

    Enumerates all 2^n smoothing states depth-first, sharing loop counts
    between siblings through an undoable union-find over the arcs.
    """
    _check_limit(d, limit)
    arcs = sorted(set(d.arcs()))
    index = {a: k for k, a in enumerate(arcs)}
    joins = []
    for a, b, c, dd in d.crossings:
        joins.append((
            (index[a], index[dd]), (index[b], index[c]),   # A-smoothing
            (index[a], index[b]), (index[c], index[dd]),   # B-smoothing
        ))
    n = len(joins)
    size = len(arcs)
    parent = list(range(size))
    rank = [0] * size
    hist: dict = {}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(x, y, log):
        rx, ry = find(x), find(y)
        if rx == ry:
            return 0
        if rank[rx] < rank[ry]:
            rx, ry = ry, rx
        parent[ry] = rx
        if rank[rx] == rank[ry]:
            rank[rx] += 1
            log.append((ry, rx))
        else:
            log.append((ry, -1))
        return 1

    def dfs(i, balance, merged):
        if i == n:
            key = (balance, size - merged + d.free_loops)
            hist[key] = hist.get(key, 0) + 1
            return
        a1, a2, b1, b2 = joins[i]
        for delta, p, q in ((1, a1, a2), (-1, b1, b2)):
            log = []
            m = union(*p, log) + union(*q, log)
            dfs(i + 1, balance + delta, merged + m)
            for ry, rx in reversed(log):
                parent[ry] = ry
                if rx >= 0:
                    rank[rx] -= 1

    dfs(0, 0, 0)
    total = BracketPoly.zero()
    for (balance, loops), count in hist.items():
        total = total + BracketPoly.a(balance, count) * LOOP_FACTOR ** (loops - 1)
    return total


def jones(d: OrientedDiagram, limit=None) -> HalfLaurent:
    """Jones polynomial, via the bracket of the simplified diagram."""
    s = simplify(d)
    return normalize_bracket(kauffman_bracket(s, limit), writhe(s))


# ---------------------------------------------------------------------------
# Skein recursions.
#
# Walking the components in listed order from their first arcs, a
# crossing is bad when it is reached on the under-strand first; changing
# the first bad crossing makes every crossing up to and including it
# good, so (crossings, bad count) drops lexicographically and the
# recursion bottoms out at descending diagrams, which are unlinks.
# ---------------------------------------------------------------------------


def _first_bad(d: OrientedDiagram):
    """(index, sign) of the first bad crossing, or None when descending."""
    signs = _signs(d)
    head = {}
    for i, (a, b, c, dd) in enumerate(d.crossings):
        head[a] = (i, False)
        head[b if signs[i] > 0 else dd] = (i, True)
    visited = set()
    for cyc in d.components:
        for arc in cyc:
            i, over = head[arc]
            if i in visited:
                continue
            visited.add(i)
            if not over:
                return i, signs[i]
    return None


def jones_skein(d: OrientedDiagram, limit=None) -> HalfLaurent:
    """Jones polynomial by the skein relation; independent of the bracket."""
    _check_limit(d, limit)
    x4 = HalfLaurent.x(4)
    plus_smooth = HalfLaurent.from_dict({3: 1, 1: -1})     # t(x - 1/x)
    minus_inv = HalfLaurent.x(-4)
    minus_smooth = HalfLaurent.from_dict({-1: -1, -3: 1})  # -(x - 1/x)/t
    memo: dict = {}

    def run(d):
        got = memo.get(d)
        if got is not None:
            return got
        bad = _first_bad(d)
        if bad is None:
            out = unlink_jones(d.n_components)
        else:
            i, sign = bad
            changed = run(simplify(crossing_change(d, i)))
            smoothed = run(simplify(oriented_smoothing(d, i)))
            if sign > 0:
                out = x4 * changed + plus_smooth * smoothed
            else:
                out = minus_inv * changed + minus_smooth * smoothed
        memo[d] = out
        return out

    return run(simplify(d))


def conway(d: OrientedDiagram, limit=None) -> ConwayPoly:
    """Conway polynomial by the skein relation."""
    _check_limit(d, limit)
    z = ConwayPoly.z()
    memo: dict = {}

    def run(d):
        got = memo.get(d)
        if got is not None:
            return got
        bad = _first_bad(d)
        if bad is None:
            out = ConwayPoly.one() if d.n_components == 1 else ConwayPoly.zero()
        else:
            i, sign = bad
            changed = run(simplify(crossing_change(d, i)))
            smoothed = run(simplify(oriented_smoothing(d, i)))
            if sign > 0:
                out = changed + z * smoothed
            else:
                out = changed - z * smoothed
        memo[d] = out
        return out

    return run(simplify(d))


def coefficient_a(d: OrientedDiagram, degree: int, limit=None) -> int:
    """The coefficient of z^degree in the Conway polynomial."""
    return conway(d, limit).coefficient(degree)


# ---------------------------------------------------------------------------
# Special values and derived invariants.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecialValues:
    """Exact values of V at t = 1, omega, i, -1, plus derived data.

    Every field has already been cross-checked against the identity
    that constrains it; construction fails otherwise.
    """

    components: int
    proper: bool
    total_linking: int
    at_one: int
    at_omega: int
    at_i: CyclotomicResidue
    at_minus_one: CyclotomicResidue
    determinant: int
    derivative_at_one: Fraction


def special_values(d: OrientedDiagram, limit=None) -> SpecialValues:
    link = linking_data(d)
    r = link.components
    v = jones(d, limit)
    nabla = conway(d, limit)

    at_one = eval_special(v, "1").as_int()
    want = (-2) ** (r - 1)
    if at_one != want:
        raise InvariantError(f"V(1) = {at_one}, expected (-2)^(r-1) = {want}")

    at_omega = eval_special(v, "omega").as_int()
    want = (-1) ** (r - 1)
    if at_omega is None or at_omega != want:
        raise InvariantError(f"V(omega) = {at_omega}, expected (-1)^(r-1) = {want}")

    at_i = eval_special(v, "i")
    if link.proper:
        norm = at_i.norm_squared().as_int()
        if norm != 2 ** (r - 1):
            raise InvariantError(f"|V(i)|^2 = {norm}, expected 2^(r-1) = {2 ** (r - 1)}")
    elif not at_i.is_zero():
        raise InvariantError(f"V(i) = {at_i} nonzero on a link with odd linking sums")

    at_minus_one = eval_special(v, "-1")
    from_conway = nabla.eval_residue(CyclotomicResidue.from_x_dict(4, {1: -2}))
    if at_minus_one != from_conway:
        raise InvariantError(
            f"V(-1) = {at_minus_one} but the Conway polynomial gives {from_conway}")
    re, im = at_minus_one.vec
    if re and im:
        raise InvariantError(f"V(-1) = {at_minus_one} is neither real nor imaginary")
    determinant = abs(re) if re else abs(im)

    deriv = derivative_at_one(v, 1)
    want = Fraction(-3) * Fraction(-2) ** (r - 2) * link.total
    if deriv != want:
        raise InvariantError(
            f"V'(1) = {deriv}, expected -3*(-2)^(r-2)*lk = {want}")

    return SpecialValues(
        components=r,
        proper=link.proper,
        total_linking=link.total,
        at_one=at_one,
        at_omega=at_omega,
        at_i=at_i,
        at_minus_one=at_minus_one,
        determinant=determinant,
        derivative_at_one=deriv,
    )


def arf_knot(d: OrientedDiagram, limit=None) -> int:
    """Arf invariant of a knot: the degree-2 Conway coefficient mod 2.

    Cross-checked against V(sqrt(-1)) = (-1)^arf.
    """
    if d.n_components != 1:
        raise InvariantError("knots only")
    arf = coefficient_a(d, 2, limit) % 2
    unit = eval_special(jones(d, limit), "i").as_int()
    if unit != (-1) ** arf:
        raise InvariantError(
            f"V(i) = {unit} disagrees with the Conway coefficient ({arf})")
    return arf


def simplified_polynomial(d: OrientedDiagram, limit=None) -> HalfLaurent:
    """The knot polynomial W with 1 - V = (1-t)(1-t^3) W."""
    if d.n_components != 1:
        raise InvariantError("the simplified polynomial is defined for knots only")
    v = jones(d, limit)
    divisor = (HalfLaurent.one() - HalfLaurent.t()) \
        * (HalfLaurent.one() - HalfLaurent.t(3))
    q = exact_divide(HalfLaurent.one() - v, divisor)
    if q is None:
        raise InvariantError("1 - V is not divisible by (1-t)(1-t^3)")
    return q
