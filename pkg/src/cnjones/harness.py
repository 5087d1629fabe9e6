"""Verification suite for the difference identities on the generated families.

Every check returns a VerificationReport; a failing report always carries a
witness (the residual polynomial or a short description) so that a red run
can be diagnosed without rerunning the computation.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .diagram import OrientedDiagram, crossing_change, oriented_smoothing
from .families import (
    MarkedDiagram,
    Tangle2,
    closed_form_torus_jones,
    family_JK,
    family_LM,
    torus_N,
)
from .invariants import coefficient_a, conway, jones, special_values
from .laurent import (
    HalfLaurent,
    derivative_at_one,
    eval_special,
    exact_divide,
    format_half_laurent,
    t_minus_one,
    theorem_difference,
)

T2T1 = HalfLaurent.from_dict({4: 1, 2: 1, 0: 1})  # t^2 + t + 1
T21 = HalfLaurent.from_dict({4: 1, 0: 1})          # t^2 + 1


@dataclass(frozen=True)
class DeltaVector:
    """Choice vector (delta_2, ..., delta_n), one entry per marked pair."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("delta vector needs at least one entry")
        if any(e not in (1, -1) for e in entries):
            raise ValueError(f"delta entries must be +-1, got {entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @staticmethod
    def all_vectors(n: int):
        """All 2^(n-1) vectors for an n-marking, +1 before -1, lexicographic."""
        for entries in itertools.product((1, -1), repeat=n - 1):
            yield DeltaVector(entries)


@dataclass(frozen=True)
class VerificationReport:
    check: str
    params: dict
    passed: bool
    witness: Optional[str]

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("failing report must carry a witness")

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "params": self.params,
                "pass": self.passed,
                "witness": self.witness,
            },
            sort_keys=True,
        )


def _report(check: str, params: dict, failures: list) -> VerificationReport:
    if failures:
        return VerificationReport(check, params, False, "; ".join(failures))
    return VerificationReport(check, params, True, None)


def resolve(md: MarkedDiagram, delta: Union[DeltaVector, Sequence[int]]) -> OrientedDiagram:
    """The link obtained by resolving a marked diagram along a choice vector.

    The head crossing is always smoothed; pair j is either smoothed at its
    first crossing (delta_j = +1) or changed at the first and smoothed at the
    second (delta_j = -1).
    """
    if not isinstance(delta, DeltaVector):
        delta = DeltaVector(tuple(delta))
    if len(delta) != len(md.pairs):
        raise ValueError(
            f"delta has {len(delta)} entries for {len(md.pairs)} marked pairs")
    work = md.diagram
    smooth = [md.c1]
    for (first, second), dj in zip(md.pairs, delta):
        if dj == 1:
            smooth.append(first)
        else:
            work = crossing_change(work, first)
            smooth.append(second)
    for index in sorted(smooth, reverse=True):
        work = oriented_smoothing(work, index)
    return work


def kanenobu_rhs(md: MarkedDiagram, limit=None) -> HalfLaurent:
    """Difference-formula right side for a marked diagram.

    (prod eps_i) * t^(sum eps_i - n/2) * (t-1)^n * sum over delta of
    (prod delta_j) * V of the resolved link.  The half-integer exponent is
    exact in x = t^(1/2).
    """
    n = md.n
    eps = md.epsilons()
    prefactor = HalfLaurent.from_dict({2 * sum(eps) - n: 1})
    for e in eps:
        if e < 0:
            prefactor = HalfLaurent.zero() - prefactor
    tm1 = t_minus_one()
    for _ in range(n):
        prefactor = prefactor * tm1
    total = HalfLaurent.zero()
    for delta in DeltaVector.all_vectors(n):
        term = jones(resolve(md, delta), limit)
        if math.prod(delta.entries) < 0:
            term = HalfLaurent.zero() - term
        total = total + term
    return prefactor * total


# ---------------------------------------------------------------------------
# Individual checks.  Ambient-isotopy statements are verified at the
# invariant level (Jones, and Conway where cheap), never by diagram search.
# ---------------------------------------------------------------------------

def verify_main(n: int) -> VerificationReport:
    """V(J_n) - V(K_n) equals the signed product (t-1)^n (t^2+t+1) (t^2+1)."""
    if n < 3:
        raise ValueError("family starts at n = 3")
    marked, partner = family_JK(n)
    diff = jones(marked.diagram) - jones(partner)
    residual = diff - theorem_difference(n)
    failures = []
    if not residual.is_zero():
        failures.append(f"residual {format_half_laurent(residual)}")
    return _report("main_difference", {"n": n}, failures)


def verify_kanenobu(n: int) -> VerificationReport:
    """Expansion over resolved links reproduces V(J_n) - V(K_n) exactly."""
    if n < 3:
        raise ValueError("family starts at n = 3")
    marked, partner = family_JK(n)
    lhs = jones(marked.diagram) - jones(partner)
    rhs = kanenobu_rhs(marked)
    failures = []
    if lhs != rhs:
        failures.append(
            f"lhs - rhs = {format_half_laurent(lhs - rhs)}")
    return _report("kanenobu_expansion", {"n": n}, failures)


def _divisor(n: int, with_t21: bool) -> HalfLaurent:
    div = T2T1
    if with_t21:
        div = div * T21
    tm1 = t_minus_one()
    for _ in range(n):
        div = div * tm1
    return div


def verify_divisibility(dL: OrientedDiagram, dM: OrientedDiagram,
                        n: int) -> VerificationReport:
    """Difference of Jones polynomials divisible by the n-level divisor.

    For n = 2 the divisor is (t-1)^2 (t^2+t+1); from n = 3 on the extra
    (t^2+1) factor joins.
    """
    if n < 2:
        raise ValueError("divisibility checks start at n = 2")
    diff = jones(dL) - jones(dM)
    divisor = _divisor(n, with_t21=n >= 3)
    failures = []
    if not diff.is_zero():
        quotient = exact_divide(diff, divisor)
        if quotient is None:
            failures.append(
                f"difference {format_half_laurent(diff)} not divisible by "
                f"{format_half_laurent(divisor)}")
    return _report("divisibility", {"n": n, "L": dL.name, "M": dM.name},
                   failures)


def verify_lemma_2_2(dL: OrientedDiagram, dM: OrientedDiagram,
                     n: int) -> VerificationReport:
    """Derivative agreement at t = 1 up to order n-1 iff divisibility.

    The two predicates must have the same truth value; the divisor here is
    (t-1)^n (t^2+t+1) without the (t^2+1) factor.
    """
    if n < 2:
        raise ValueError("the equivalence needs n >= 2")
    vL, vM = jones(dL), jones(dM)
    derivs_equal = all(
        derivative_at_one(vL, order) == derivative_at_one(vM, order)
        for order in range(1, n))
    diff = vL - vM
    divisible = diff.is_zero() or exact_divide(diff, _divisor(n, False)) is not None
    failures = []
    if derivs_equal != divisible:
        failures.append(
            f"derivatives equal: {derivs_equal}, divisible: {divisible}")
    return _report("derivative_divisibility_equivalence",
                   {"n": n, "L": dL.name, "M": dM.name}, failures)


def verify_congruences(n: int) -> VerificationReport:
    """Derivative and Conway-coefficient congruences for the n-th pair.

    Checks (i) the order-n derivative difference at t = 1 equals
    (-1)^(n+1) * 6 * n!, (ii) a_n differs by an even integer, and (iii) for
    even n that difference lies in {0, +-2}.
    """
    if n < 3:
        raise ValueError("family starts at n = 3")
    marked, partner = family_JK(n)
    vJ, vK = jones(marked.diagram), jones(partner)
    failures = []

    deriv_diff = derivative_at_one(vJ, n) - derivative_at_one(vK, n)
    want = (-1) ** (n + 1) * 6 * math.factorial(n)
    if deriv_diff != want:
        failures.append(f"order-{n} derivative difference {deriv_diff} != {want}")

    a_diff = coefficient_a(marked.diagram, n) - coefficient_a(partner, n)
    if a_diff % 2 != 0:
        failures.append(f"a_{n} difference {a_diff} is odd")
    if n % 2 == 0 and a_diff not in (0, 2, -2):
        failures.append(f"a_{n} difference {a_diff} outside {{0, +-2}}")

    return _report("congruences", {"n": n}, failures)


def verify_special_values(corpus: Iterable) -> VerificationReport:
    """Engine value laws over a corpus of diagrams and equivalent pairs.

    Corpus items are either single diagrams or (L, M) pairs; a pair gets both
    diagrams checked plus equality of V at t = sqrt(-1), the value preserved
    by the moves considered here.  An empty corpus passes vacuously.
    """
    failures = []
    count = 0
    for item in corpus:
        if isinstance(item, OrientedDiagram):
            diagrams, pair = [item], None
        else:
            diagrams, pair = list(item), tuple(item)
        for d in diagrams:
            count += 1
            try:
                special_values(d)
            except Exception as exc:  # the engine raises on any broken law
                failures.append(f"{d.name or 'diagram'}: {exc}")
        if pair is not None:
            left, right = pair
            vi_l = eval_special(jones(left), "i")
            vi_r = eval_special(jones(right), "i")
            if vi_l != vi_r:
                failures.append(
                    f"V(i) mismatch for {left.name or 'L'} / {right.name or 'M'}")
    return _report("special_values", {"size": count}, failures)


def verify_j_identities(n: int) -> VerificationReport:
    """Structural identities of the resolution family for one marking.

    Covers the collapse of the last choice entry when the second is -1, the
    vanishing alternating tail sums, the three closed-form identifications
    of almost-all-ones resolutions, the skein-triple expression for the
    all-ones resolution, and the symbolic closed-form combination.
    """
    if n < 5:
        raise ValueError("the identity suite needs n >= 5")
    marked, _ = family_JK(n)
    failures = []

    def res_jones(entries) -> HalfLaurent:
        return jones(resolve(marked, DeltaVector(tuple(entries))))

    # (a) with delta_2 = -1 the last entry is irrelevant
    for middle in itertools.product((1, -1), repeat=n - 3):
        plus = res_jones((-1,) + middle + (1,))
        minus = res_jones((-1,) + middle + (-1,))
        if plus != minus:
            failures.append(f"tail collapse failed at middle {middle}")

    # (b) alternating tail sums vanish for each cut position k = 3..n-2
    for k in range(3, n - 1):
        head = (1,) * (k - 2) + (-1,)
        total = HalfLaurent.zero()
        for tail in itertools.product((1, -1), repeat=n - k):
            term = res_jones(head + tail)
            if math.prod(tail) < 0:
                term = HalfLaurent.zero() - term
            total = total + term
        if not total.is_zero():
            failures.append(
                f"tail sum at k={k} is {format_half_laurent(total)}")

    x = HalfLaurent.from_dict({1: 1})
    xinv = HalfLaurent.from_dict({-1: 1})
    loop = HalfLaurent.from_dict({1: -1, -1: -1})  # -x - x^-1
    vN3 = jones(torus_N(n - 3))
    vN4 = jones(torus_N(n - 4))

    # (c) almost-all-ones resolutions against the negative torus family
    checks = [
        ("ones,-1,-1", (1,) * (n - 3) + (-1, -1), vN3),
        ("ones,-1,+1", (1,) * (n - 3) + (-1, 1), loop * vN4),
        ("ones,-1", (1,) * (n - 2) + (-1,),
         HalfLaurent.from_dict({5: -1, 1: -1})
         * HalfLaurent.from_dict({-5: -1, -1: -1}) * vN3),
    ]
    for tag, entries, want in checks:
        got = res_jones(entries)
        if got != want:
            failures.append(
                f"{tag}: {format_half_laurent(got - want)} residual")

    # (d) all-ones resolution via the skein triple with the torus pair
    got = res_jones((1,) * (n - 1))
    want = (HalfLaurent.from_dict({-4: 1}) * vN3
            - HalfLaurent.from_dict({-2: 1}) * (x - xinv) * vN4)
    if got != want:
        failures.append(f"all-ones: {format_half_laurent(got - want)} residual")

    # (e) symbolic combination of the closed forms
    lhs = (HalfLaurent.zero() - closed_form_torus_jones(n - 3)
           + HalfLaurent.from_dict({-3: 1}) * closed_form_torus_jones(n - 4))
    sign = 1 if (n + 1) % 2 == 0 else -1
    rhs = HalfLaurent.from_dict({-n: sign}) * T2T1
    if lhs != rhs:
        failures.append(
            f"closed-form combination: {format_half_laurent(lhs - rhs)} residual")

    return _report("resolution_identities", {"n": n}, failures)


def verify_lemma_3_2(n: int, tangles: Sequence[Tangle2]) -> VerificationReport:
    """The sliding pair agrees on Jones and Conway for every given tangle."""
    if n < 3:
        raise ValueError("the sliding family starts at n = 3")
    failures = []
    for tangle in tangles:
        marked, partner = family_LM(n, tangle)
        left = marked.diagram
        if jones(left) != jones(partner):
            failures.append(f"{tangle.name}: Jones differs")
        elif conway(left) != conway(partner):
            failures.append(f"{tangle.name}: Conway differs")
    return _report("sliding_pair", {"n": n, "tangles": [t.name for t in tangles]},
                   failures)


def run_reports(reports: Iterable[VerificationReport]) -> str:
    """Merge reports into JSON lines, sorted by check name and parameters."""
    ordered = sorted(reports, key=lambda r: (r.check, json.dumps(r.params, sort_keys=True)))
    return "\n".join(r.to_json_line() for r in ordered)
