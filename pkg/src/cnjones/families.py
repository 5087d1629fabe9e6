"""Parametric diagram generators.

Everything here produces validated ``OrientedDiagram`` values: reference
knots and links, closures of braid words, the twist family ``torus_N``,
and the marked staircase pairs used by the verification harness.  Marked
crossings are tracked by index into the crossing tuple, so generators are
careful to keep crossing order stable under relabelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diagram import (
    DiagramError,
    OrientedDiagram,
    _canonical,
    crossing_change,
    crossing_sign,
    from_json_dict,
    require_valid,
    to_json_dict,
)
from .laurent import HalfLaurent

__all__ = [
    "MarkedDiagram",
    "Tangle2",
    "basics",
    "closed_braid",
    "closed_form_torus_jones",
    "family_JK",
    "family_LM",
    "hopf",
    "marked_from_json_dict",
    "marked_to_json_dict",
    "tangle_clasp",
    "tangle_trivial",
    "tangle_twist",
    "torus_N",
    "trefoil",
    "unknot",
    "unlink",
    "validate_tangle",
]


class _Assembler:
    """Incremental diagram builder over abstract arc labels.

    Crossings are appended with explicit under/over inputs; output arcs are
    allocated on the fly.  ``wire`` identifies the tail of one arc with the
    head of another.  ``finish`` resolves identifications, traces components
    and returns a canonically labelled diagram.
    """

    def __init__(self) -> None:
        self._next = 1
        self.crossings: list[tuple[int, int, int, int]] = []
        self._succ: dict[int, int] = {}
        self._parent: dict[int, int] = {}

    def arc(self) -> int:
        a = self._next
        self._next += 1
        self._parent[a] = a
        return a

    def _find(self, a: int) -> int:
        while self._parent[a] != a:
            self._parent[a] = self._parent[self._parent[a]]
            a = self._parent[a]
        return a

    def cross(self, sign: int, under_in: int, over_in: int) -> tuple[int, int]:
        """Append a crossing, returning (under_out, over_out)."""
        under_out = self.arc()
        over_out = self.arc()
        if sign > 0:
            self.crossings.append((under_in, over_in, under_out, over_out))
        else:
            self.crossings.append((under_in, over_out, under_out, over_in))
        self._succ[under_in] = under_out
        self._succ[over_in] = over_out
        return under_out, over_out

    def wire(self, tail: int, head: int) -> None:
        """Declare that arc `tail` continues as arc `head`."""
        ra, rb = self._find(tail), self._find(head)
        if ra != rb:
            self._parent[ra] = rb

    def finish(self, name: str = "") -> OrientedDiagram:
        rep = {a: self._find(a) for a in self._parent}
        succ = {rep[a]: rep[b] for a, b in self._succ.items()}
        crossings = tuple(
            tuple(rep[x] for x in cr) for cr in self.crossings
        )
        used = {x for cr in crossings for x in cr}
        components = []
        seen: set[int] = set()
        for start in sorted(succ):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            a = succ[start]
            while a != start:
                cycle.append(a)
                seen.add(a)
                a = succ[a]
            components.append(tuple(cycle))
        free = len({r for r in rep.values() if r not in used})
        d = OrientedDiagram(crossings, tuple(components), free, name)
        return require_valid(_canonical(d))


def closed_braid(strands: int, word: Sequence[int], name: str = "") -> OrientedDiagram:
    """Close a braid word into an oriented link diagram.

    Letter k (1 <= |k| < strands) crosses the strands at positions |k| and
    |k|+1, positively for k > 0.  All strands are oriented the same way
    along the braid axis, so every crossing sign equals its letter sign and
    crossing i of the result corresponds to letter i of the word.  Strand
    positions never touched by the word close into free loops.
    """
    if strands < 1:
        raise ValueError("braid needs at least one strand")
    asm = _Assembler()
    cur = [asm.arc() for _ in range(strands)]
    first = list(cur)
    for pos, letter in enumerate(word):
        k = abs(letter)
        if not 1 <= k < strands:
            raise ValueError(
                f"letter {pos}: generator {letter} out of range for {strands} strands")
        u, v = cur[k - 1], cur[k]
        if letter > 0:
            under_out, over_out = asm.cross(+1, u, v)
            cur[k - 1], cur[k] = over_out, under_out
        else:
            under_out, over_out = asm.cross(-1, v, u)
            cur[k - 1], cur[k] = under_out, over_out
    for p in range(strands):
        asm.wire(cur[p], first[p])
    return asm.finish(name)


def plat_closure(word: Sequence[int], name: str = "") -> OrientedDiagram:
    """Close a four-strand braid word with caps above and below.

    The strand pairs (1,2) and (3,4) are joined at the top and at the
    bottom.  Letter k (|k| in 1..3) crosses plat positions |k| and |k|+1;
    for k > 0 the strand arriving from position |k| passes over.  Unlike
    braid closure the strands are not coherently oriented, so letter signs
    are a chirality choice, not crossing signs.  Crossing i of the result
    corresponds to letter i of the word.
    """
    for pos, letter in enumerate(word):
        if not 1 <= abs(letter) <= 3:
            raise ValueError(f"letter {pos}: generator {letter} out of range")
    # cap orientations are not known up front; try until the bottom caps
    # close coherently
    last_err = None
    for flip_left, flip_right in ((False, False), (False, True),
                                  (True, False), (True, True)):
        try:
            return _plat_attempt(word, flip_left, flip_right, name)
        except DiagramError as exc:
            last_err = exc
    raise DiagramError(f"plat closure failed: {last_err}")


def _plat_attempt(word: Sequence[int], flip_left: bool, flip_right: bool,
                  name: str) -> OrientedDiagram:
    asm = _Assembler()
    left, right = asm.arc(), asm.arc()
    # state per position: (arc, flowing_down)
    if flip_left:
        ends = [(left, False), (left, True)]
    else:
        ends = [(left, True), (left, False)]
    if flip_right:
        ends += [(right, False), (right, True)]
    else:
        ends += [(right, True), (right, False)]
    for letter in word:
        p = abs(letter) - 1
        (a, a_down), (b, b_down) = ends[p], ends[p + 1]
        bl, br = asm.arc(), asm.arc()
        # strings run diagonally: position p continues to br, p+1 to bl
        legs = {"tl": a, "tr": b, "bl": bl, "br": br}
        p_in, p_out = ("tl", "br") if a_down else ("br", "tl")
        q_in, q_out = ("tr", "bl") if b_down else ("bl", "tr")
        under_in = q_in if letter > 0 else p_in
        ccw = ("tl", "bl", "br", "tr")
        k = ccw.index(under_in)
        asm.crossings.append(tuple(legs[ccw[(k + i) % 4]] for i in range(4)))
        asm._succ[legs[p_in]] = legs[p_out]
        asm._succ[legs[q_in]] = legs[q_out]
        ends[p], ends[p + 1] = (bl, b_down), (br, a_down)
    for (a, a_down), (b, b_down) in (ends[:2], ends[2:]):
        if a_down == b_down:
            raise DiagramError("cap orientation mismatch")
        if a_down:
            asm.wire(a, b)
        else:
            asm.wire(b, a)
    return asm.finish(name)


def unknot() -> OrientedDiagram:
    return OrientedDiagram((), (), 1, "unknot")


def unlink(r: int) -> OrientedDiagram:
    if r < 1:
        raise ValueError("unlink needs at least one component")
    return OrientedDiagram((), (), r, f"unlink-{r}")


def hopf(sign: int) -> OrientedDiagram:
    if sign not in (1, -1):
        raise ValueError("hopf sign must be +1 or -1")
    tag = "hopf+" if sign > 0 else "hopf-"
    return closed_braid(2, [sign, sign], tag)


def trefoil(handedness: str) -> OrientedDiagram:
    if handedness not in ("right", "left"):
        raise ValueError("handedness must be 'right' or 'left'")
    s = 1 if handedness == "right" else -1
    return closed_braid(2, [s, s, s], f"trefoil-{handedness}")


def basics(kind: str, param=None) -> OrientedDiagram:
    """Dispatch table for the small reference diagrams.

    kinds: "unknot"; "unlink" with component count; "hopf" with sign;
    "trefoil" with handedness.
    """
    if kind == "unknot":
        return unknot()
    if kind == "unlink":
        return unlink(int(param if param is not None else 1))
    if kind == "hopf":
        return hopf(int(param if param is not None else 1))
    if kind == "trefoil":
        return trefoil(param if param is not None else "right")
    raise ValueError(f"unknown basic diagram kind: {kind!r}")


def torus_N(m: int) -> OrientedDiagram:
    """Closure of the two-strand braid with m negative crossings.

    m = 0 gives the two-component unlink, m = 1 an unknot with a kink,
    m = 2 the negative Hopf link, m = 3 the left trefoil, and so on.
    """
    if m < 0:
        raise ValueError("torus_N needs m >= 0")
    return closed_braid(2, [-1] * m, f"torus-N{m}")


def closed_form_torus_jones(m: int) -> HalfLaurent:
    """Division-free closed form for jones(torus_N(m)).

    (-x^-1)^m (-x - x^-1) + sum_{i=1}^{m} (-x^{1-3m}) (-t)^{i-1},
    where x = t^{1/2}.
    """
    if m < 0:
        raise ValueError("closed form needs m >= 0")
    head = HalfLaurent.from_dict({-1: -1}) ** m * HalfLaurent.from_dict({1: -1, -1: -1})
    minus_t = HalfLaurent.from_dict({2: -1})
    term = HalfLaurent.from_dict({1 - 3 * m: -1})
    total = head
    for _ in range(m):
        total = total + term
        term = term * minus_t
    return total


@dataclass(frozen=True)
class MarkedDiagram:
    """A diagram with the distinguished crossings of a twist-region band.

    `c1` is the lead crossing; `pairs` lists the (first, second) crossing
    indices of each rung, ordered along the band.  The band size n is
    len(pairs) + 1.
    """

    diagram: OrientedDiagram
    c1: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        refs = [self.c1]
        for p in self.pairs:
            if len(p) != 2:
                raise DiagramError(f"marked pair {p} is not a pair")
            refs.extend(p)
        limit = self.diagram.n_crossings
        for r in refs:
            if not isinstance(r, int) or not 0 <= r < limit:
                raise DiagramError(f"marked crossing {r} out of bounds")
        if len(set(refs)) != len(refs):
            raise DiagramError("marked crossings must be distinct")
        if len(self.pairs) < 1:
            raise DiagramError("marking needs at least one pair")

    @property
    def n(self) -> int:
        return len(self.pairs) + 1

    def epsilons(self) -> tuple[int, ...]:
        """Signs (eps_1, eps_2, ..., eps_n) of c1 and each lead pair crossing."""
        d = self.diagram
        return (crossing_sign(d, self.c1),) + tuple(
            crossing_sign(d, a) for a, _ in self.pairs)


def marked_to_json_dict(md: MarkedDiagram) -> dict:
    out = to_json_dict(md.diagram)
    out["c1"] = md.c1
    out["pairs"] = [list(p) for p in md.pairs]
    return out


def marked_from_json_dict(data: dict) -> MarkedDiagram:
    d = from_json_dict(data)
    try:
        c1 = int(data["c1"])
        pairs = tuple((int(a), int(b)) for a, b in data["pairs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed marking: {exc}") from exc
    return MarkedDiagram(d, c1, pairs)


@dataclass(frozen=True)
class Tangle2:
    """A two-string tangle: a partial diagram with four open arc ends.

    Strings enter at the top ends (nw, ne) and leave at the bottom ends
    (sw, se).  Crossing tuples follow the same slot conventions as
    OrientedDiagram over tangle-local arc labels.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    nw: int
    ne: int
    sw: int
    se: int
    name: str = field(default="", compare=False)


def validate_tangle(t: Tangle2) -> list:
    """Structural checks; returns a list of violation strings."""
    problems = []
    ends = (t.nw, t.ne, t.sw, t.se)
    slots = [x for cr in t.crossings for x in cr]
    arcs = set(slots) | set(ends)
    if any(not isinstance(a, int) or a < 1 for a in arcs):
        problems.append("arc labels must be positive integers")
        return problems
    if t.nw == t.ne:
        problems.append("top ends must be distinct arcs")
    if t.sw == t.se:
        problems.append("bottom ends must be distinct arcs")
    open_ends = {}
    for a in ends:
        open_ends[a] = open_ends.get(a, 0) + 1
    if sum(open_ends.values()) != 4:
        problems.append("tangle must have exactly four open ends")
    for a in sorted(arcs):
        want = 2 - open_ends.get(a, 0)
        got = slots.count(a)
        if got != want:
            problems.append(
                f"arc {a}: appears in {got} crossing slots, expected {want}")
    return problems


def _require_tangle(t: Tangle2) -> Tangle2:
    problems = validate_tangle(t)
    if problems:
        raise DiagramError("; ".join(problems))
    return t


def tangle_trivial() -> Tangle2:
    return Tangle2((), 1, 2, 1, 2, "trivial")


def tangle_twist(sign: int) -> Tangle2:
    """One crossing between the two strings; the strings change sides."""
    if sign > 0:
        return Tangle2(((2, 1, 3, 4),), 1, 2, 3, 4, "twist+")
    return Tangle2(((1, 3, 4, 2),), 1, 2, 3, 4, "twist-")


def tangle_clasp() -> Tangle2:
    """Two positive crossings hooking the strings; sides are restored."""
    return Tangle2(((2, 1, 3, 4), (4, 3, 5, 6)), 1, 2, 5, 6, "clasp")


def _splice(asm: _Assembler, t: Tangle2, top: tuple[int, int],
            bottom: tuple[int, int]) -> None:
    """Graft a tangle between host arcs.

    `top` arcs flow into the tangle's (nw, ne) ends; the tangle's (sw, se)
    ends flow on into the `bottom` arcs.  Both strings are traced from the
    top ends to orient every crossing passage.
    """
    _require_tangle(t)
    local: dict[int, int] = {}

    def fresh(a: int) -> int:
        if a not in local:
            local[a] = asm.arc()
        return local[a]

    crossings = [tuple(fresh(x) for x in cr) for cr in t.crossings]
    asm.crossings.extend(crossings)
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, cr in enumerate(crossings):
        for si, arc in enumerate(cr):
            occ.setdefault(arc, []).append((ci, si))
    consumed: set[tuple[int, int]] = set()
    for end in (t.nw, t.ne):
        arc = fresh(end)
        while True:
            entry = [o for o in occ.get(arc, ()) if o not in consumed]
            if not entry:
                break
            ci, si = entry[0]
            if si == 2:
                raise DiagramError(
                    f"tangle {t.name or t}: string flows into an under exit")
            out_slot = 2 if si == 0 else 4 - si
            consumed.add((ci, si))
            consumed.add((ci, out_slot))
            nxt = crossings[ci][out_slot]
            asm._succ[arc] = nxt
            arc = nxt
    if len(consumed) != 4 * len(crossings):
        raise DiagramError(
            f"tangle {t.name or t}: contains strings not reachable from "
            "the top ends")
    asm.wire(top[0], fresh(t.nw))
    asm.wire(top[1], fresh(t.ne))
    asm.wire(fresh(t.sw), bottom[0])
    asm.wire(fresh(t.se), bottom[1])


def family_JK(n: int):
    raise NotImplementedError


def family_LM(n: int, tangle: Tangle2):
    raise NotImplementedError
