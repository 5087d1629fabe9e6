"""Oriented link diagrams as PD codes with explicit component cycles.

A crossing is a counterclockwise 4-tuple (a, b, c, d) of arc labels
starting from the incoming under-arc a, so c is the outgoing under-arc
and the over-strand occupies b and d; the crossing is positive exactly
when the over-strand runs from b to d.  Components list every strand as
a cyclic arc sequence in orientation order; crossing-free circles carry
no arcs and are only counted by `free_loops`.

All structural operations (smoothing, Reidemeister I/II removal,
composition) are built on one surgery primitive that deletes crossings,
reroutes the strand successor map, fuses arcs, and relabels the result
canonically: arcs become consecutive along each component, components
are ordered by their smallest pre-surgery arc, and surviving crossings
keep their relative order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations, product

__all__ = [
    "DiagramError",
    "OrientedDiagram",
    "LinkingData",
    "successor_map",
    "crossing_sign",
    "writhe",
    "validate",
    "require_valid",
    "linking_data",
    "crossing_change",
    "oriented_smoothing",
    "a_smoothing_pairs",
    "b_smoothing_pairs",
    "mirror",
    "split_union",
    "connected_sum",
    "simplify",
    "split_components",
    "same_diagram",
    "to_json_dict",
    "from_json_dict",
    "dump_diagram",
    "load_diagram",
]


class DiagramError(ValueError):
    """Raised for structurally invalid diagrams or illegal operations."""


@dataclass(frozen=True)
class OrientedDiagram:
    crossings: tuple = ()
    components: tuple = ()
    free_loops: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(x) for x in self.crossings))
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        """Total component count, crossing-free circles included."""
        return len(self.components) + self.free_loops

    def arcs(self) -> tuple:
        return tuple(a for cyc in self.components for a in cyc)

    def with_name(self, name: str) -> "OrientedDiagram":
        return OrientedDiagram(self.crossings, self.components, self.free_loops, name)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"<OrientedDiagram{label}: {self.n_crossings} crossings, "
                f"{self.n_components} components>")


def successor_map(d: OrientedDiagram) -> dict:
    succ = {}
    for cyc in d.components:
        for i, a in enumerate(cyc):
            succ[a] = cyc[(i + 1) % len(cyc)]
    return succ


def _head_states(d: OrientedDiagram) -> dict:
    """Decide for every crossing slot whether the arc there is entering.

    Under slots are forced (a enters, c leaves).  An over slot is forced
    by the successor map unless both readings of the over-strand are
    consecutive, which happens exactly when its two arcs form a two-arc
    component; the rest is settled by propagating two constraints: the
    two slots of an arc are one entry and one exit, and so are the two
    over slots of a crossing.  A two-arc component lying over everything
    it meets stays genuinely ambiguous (its cycle reads the same in both
    directions); such a component never links anything, so seeding an
    arbitrary direction cannot change any invariant.
    """
    succ = successor_map(d)
    slots_of = {}
    for i, x in enumerate(d.crossings):
        for pos, u in enumerate(x):
            slots_of.setdefault(u, []).append((i, pos))
    state = {}
    queue = []

    def put(slot, val):
        if slot in state:
            if state[slot] != val:
                raise DiagramError("inconsistent strand directions at crossing "
                                   f"{slot[0]}")
            return
        state[slot] = val
        queue.append(slot)

    for i, (a, b, c, dd) in enumerate(d.crossings):
        put((i, 0), True)
        put((i, 2), False)
        b_to_d = succ.get(b) == dd
        d_to_b = succ.get(dd) == b
        if not b_to_d and not d_to_b:
            raise DiagramError(f"crossing {i}: neither over-strand direction "
                               "follows the component order")
        if b_to_d != d_to_b:
            put((i, 1), b_to_d)
    pending = [(i, 1) for i in reversed(range(len(d.crossings)))]
    while True:
        while queue:
            i, pos = slot = queue.pop()
            val = state[slot]
            if pos in (1, 3):
                put((i, 4 - pos), not val)
            u = d.crossings[i][pos]
            for other in slots_of[u]:
                if other != slot:
                    put(other, not val)
        while pending and pending[-1] in state:
            pending.pop()
        if not pending:
            break
        put(pending.pop(), True)
    return state


def _signs(d: OrientedDiagram) -> list:
    state = _head_states(d)
    succ = successor_map(d)
    out = []
    for i, (a, b, c, dd) in enumerate(d.crossings):
        if state[(i, 1)]:
            entry, exit_ = b, dd
            sign = 1
        else:
            entry, exit_ = dd, b
            sign = -1
        if succ.get(entry) != exit_:
            raise DiagramError(f"crossing {i}: over-strand {entry}->{exit_} "
                               "does not follow the component order")
        out.append(sign)
    return out


def crossing_sign(d: OrientedDiagram, i: int) -> int:
    """+1 when the over-strand runs b -> d, -1 when it runs d -> b."""
    return _signs(d)[i]


def writhe(d: OrientedDiagram) -> int:
    return sum(_signs(d))


def validate(d: OrientedDiagram) -> list:
    """All structural violations as human-readable messages; [] when valid."""
    problems = []
    if d.free_loops < 0:
        problems.append(f"free_loops is negative ({d.free_loops})")
    if not d.components and d.free_loops == 0:
        problems.append("empty diagram: no components and no free loops")
    seen = set()
    for ci, cyc in enumerate(d.components):
        if not cyc:
            problems.append(f"component {ci} has no arcs")
        for a in cyc:
            if not isinstance(a, int) or a < 1:
                problems.append(f"component {ci}: arc {a!r} is not a positive integer")
            elif a in seen:
                problems.append(f"arc {a} appears in more than one component position")
            else:
                seen.add(a)
    slot_count = {}
    for i, x in enumerate(d.crossings):
        if len(x) != 4:
            problems.append(f"crossing {i} is not a 4-tuple: {x!r}")
            continue
        for a in x:
            if a not in seen:
                problems.append(f"crossing {i} references unknown arc {a}")
            slot_count[a] = slot_count.get(a, 0) + 1
    if problems:
        return problems
    for a in sorted(seen):
        n = slot_count.get(a, 0)
        if n != 2:
            problems.append(f"arc {a} appears in {n} crossing slots (expected 2)")
    succ = successor_map(d)
    for i, (a, b, c, dd) in enumerate(d.crossings):
        if succ.get(a) != c:
            problems.append(f"crossing {i}: under-exit {c} is not the successor of {a}")
    if not problems:
        try:
            _signs(d)
        except DiagramError as exc:
            problems.append(str(exc))
    return problems


def require_valid(d: OrientedDiagram) -> OrientedDiagram:
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))
    return d


@dataclass(frozen=True)
class LinkingData:
    pairwise: tuple        # ((i, j, lk) for cycle components i < j)
    total: int             # sum of pairwise linking numbers
    proper: bool           # every per-component linking sum is even
    components: int        # total component count, free loops included


def linking_data(d: OrientedDiagram) -> LinkingData:
    comp_of = {}
    for ci, cyc in enumerate(d.components):
        for a in cyc:
            comp_of[a] = ci
    signs = _signs(d)
    tally = {}
    for i, (a, b, c, dd) in enumerate(d.crossings):
        ca, cb = comp_of[a], comp_of[b]
        if ca != cb:
            key = (min(ca, cb), max(ca, cb))
            tally[key] = tally.get(key, 0) + signs[i]
    pairwise = []
    per_comp = [0] * len(d.components)
    for (i, j), s in sorted(tally.items()):
        if s % 2:
            raise DiagramError(f"components {i},{j} share an odd signed crossing count {s}")
        lk = s // 2
        pairwise.append((i, j, lk))
        per_comp[i] += lk
        per_comp[j] += lk
    total = sum(lk for _, _, lk in pairwise)
    proper = all(s % 2 == 0 for s in per_comp)
    return LinkingData(tuple(pairwise), total, proper, d.n_components)


# ---------------------------------------------------------------------------
# Surgery: the common core of smoothing, Reidemeister removal and resolution.
# ---------------------------------------------------------------------------


def _surgery(d: OrientedDiagram, removed: set, glue: list) -> OrientedDiagram:
    """Drop the crossings in `removed`, rerouting strands along `glue`.

    Every passage through a removed crossing must be replaced by exactly
    one glue pair (u, v), meaning the strand arriving on arc u continues
    on arc v; glued arcs fuse into a single new arc.
    """
    succ = successor_map(d)
    nxt = {u: (v, True) for u, v in succ.items()}
    for u, v in glue:
        nxt[u] = (v, False)
    seen = set()
    seg_members = []
    seg_of = {}
    new_components = []
    extra_loops = 0
    for start in (a for cyc in d.components for a in cyc):
        if start in seen:
            continue
        cyc = []
        u = start
        while u not in seen:
            seen.add(u)
            cyc.append(u)
            u = nxt[u][0]
        tags = [nxt[a][1] for a in cyc]
        if not any(tags):
            extra_loops += 1
            continue
        rot = next(i for i in range(len(cyc)) if tags[i - 1])
        cyc = cyc[rot:] + cyc[:rot]
        tags = tags[rot:] + tags[:rot]
        comp = []
        current = []
        for a, tag in zip(cyc, tags):
            current.append(a)
            if tag:
                sid = len(seg_members)
                seg_members.append(current)
                for w in current:
                    seg_of[w] = sid
                comp.append(sid)
                current = []
        new_components.append(comp)
    # Canonical relabeling: order components by their smallest original
    # arc, start each cycle at the segment holding that arc.
    keyed = []
    for comp in new_components:
        key = min(min(seg_members[s]) for s in comp)
        start = next(i for i, s in enumerate(comp) if key in seg_members[s])
        keyed.append((key, comp[start:] + comp[:start]))
    keyed.sort()
    new_id = {}
    components = []
    counter = 1
    for _, comp in keyed:
        cycle = []
        for s in comp:
            new_id[s] = counter
            cycle.append(counter)
            counter += 1
        components.append(tuple(cycle))
    crossings = tuple(
        tuple(new_id[seg_of[a]] for a in d.crossings[i])
        for i in range(len(d.crossings))
        if i not in removed
    )
    return OrientedDiagram(crossings, tuple(components), d.free_loops + extra_loops)


def _canonical(d: OrientedDiagram) -> OrientedDiagram:
    if not d.components:
        return OrientedDiagram((), (), d.free_loops, d.name)
    return _surgery(d, set(), []).with_name(d.name)


def _passages(d: OrientedDiagram, i: int) -> list:
    """The two (entry, exit) strand passages through crossing i."""
    a, b, c, dd = d.crossings[i]
    if crossing_sign(d, i) > 0:
        return [(a, c), (b, dd)]
    return [(a, c), (dd, b)]


# ---------------------------------------------------------------------------
# Elementary moves.
# ---------------------------------------------------------------------------


def crossing_change(d: OrientedDiagram, i: int) -> OrientedDiagram:
    """Swap over/under at crossing i (rotates the tuple; flips the sign)."""
    a, b, c, dd = d.crossings[i]
    if crossing_sign(d, i) > 0:
        new = (b, c, dd, a)
    else:
        new = (dd, a, b, c)
    crossings = d.crossings[:i] + (new,) + d.crossings[i + 1:]
    return OrientedDiagram(crossings, d.components, d.free_loops)


def mirror(d: OrientedDiagram) -> OrientedDiagram:
    """The mirror image: over/under swapped at every crossing."""
    signs = _signs(d)
    crossings = tuple(
        (b, c, dd, a) if s > 0 else (dd, a, b, c)
        for (a, b, c, dd), s in zip(d.crossings, signs)
    )
    return OrientedDiagram(crossings, d.components, d.free_loops)


def oriented_smoothing(d: OrientedDiagram, i: int) -> OrientedDiagram:
    """Replace crossing i by the smoothing compatible with orientations."""
    a, b, c, dd = d.crossings[i]
    if crossing_sign(d, i) > 0:
        glue = [(a, dd), (b, c)]
    else:
        glue = [(a, b), (dd, c)]
    return _surgery(d, {i}, glue)


def a_smoothing_pairs(crossing) -> tuple:
    """Arc pairs joined by the A-smoothing of a crossing tuple."""
    a, b, c, dd = crossing
    return ((a, dd), (b, c))


def b_smoothing_pairs(crossing) -> tuple:
    """Arc pairs joined by the B-smoothing of a crossing tuple."""
    a, b, c, dd = crossing
    return ((a, b), (c, dd))


# ---------------------------------------------------------------------------
# Composition.
# ---------------------------------------------------------------------------


def _shifted(d: OrientedDiagram, offset: int):
    crossings = tuple(tuple(a + offset for a in x) for x in d.crossings)
    components = tuple(tuple(a + offset for a in cyc) for cyc in d.components)
    return crossings, components


def split_union(d1: OrientedDiagram, d2: OrientedDiagram) -> OrientedDiagram:
    """The distant union of two diagrams."""
    offset = max([a for cyc in d1.components for a in cyc], default=0)
    c2, k2 = _shifted(d2, offset)
    return _canonical(OrientedDiagram(
        d1.crossings + c2,
        d1.components + k2,
        d1.free_loops + d2.free_loops,
    ))


def _head_slot(d: OrientedDiagram, arc: int) -> tuple:
    """(crossing index, slot) where `arc` enters a crossing."""
    signs = _signs(d)
    for i, (a, b, c, dd) in enumerate(d.crossings):
        if a == arc:
            return i, 0
        if signs[i] > 0 and b == arc:
            return i, 1
        if signs[i] < 0 and dd == arc:
            return i, 3
    raise DiagramError(f"arc {arc} enters no crossing")


def connected_sum(d1: OrientedDiagram, arc1: int, d2: OrientedDiagram, arc2: int) -> OrientedDiagram:
    """Connected sum splicing arc1 of d1 into arc2 of d2."""
    if arc1 not in set(d1.arcs()):
        raise DiagramError(f"arc {arc1} is not an arc of the first diagram")
    if arc2 not in set(d2.arcs()):
        raise DiagramError(f"arc {arc2} is not an arc of the second diagram")
    offset = max(d1.arcs())
    c2, k2 = _shifted(d2, offset)
    u, v = arc1, arc2 + offset
    # Cut u and v and cross-join: u keeps its tail slot and takes over
    # the head slot of v, and vice versa.
    i1, s1 = _head_slot(d1, u)
    d2s = OrientedDiagram(c2, k2, d2.free_loops)
    i2, s2 = _head_slot(d2s, v)
    crossings = [list(x) for x in d1.crossings + c2]
    crossings[i1][s1] = v
    crossings[len(d1.crossings) + i2][s2] = u
    cyc1 = next(c for c in d1.components if u in c)
    cyc2 = next(c for c in k2 if v in c)
    r1 = cyc1.index(u)
    r2 = cyc2.index(v)
    merged = ((u,) + cyc2[r2 + 1:] + cyc2[:r2 + 1] + cyc1[r1 + 1:] + cyc1[:r1])
    components = tuple(c for c in d1.components if c is not cyc1) \
        + tuple(c for c in k2 if c is not cyc2) + (merged,)
    return _canonical(OrientedDiagram(
        tuple(tuple(x) for x in crossings),
        components,
        d1.free_loops + d2.free_loops,
    ))


# ---------------------------------------------------------------------------
# Reidemeister I/II reduction.
# ---------------------------------------------------------------------------


def _find_r1(d: OrientedDiagram):
    for i, (a, b, c, dd) in enumerate(d.crossings):
        if b in (a, c) or dd in (a, c):
            return i
    return None


def _slot_kind(pos: int) -> bool:
    """True when the slot position is on the over-strand."""
    return pos in (1, 3)


def _find_r2(d: OrientedDiagram):
    slots = {}
    for i, x in enumerate(d.crossings):
        for pos, a in enumerate(x):
            slots.setdefault(a, []).append((i, pos))
    by_pair = {}
    for a, ss in slots.items():
        if len(ss) != 2:
            continue
        (i, p1), (j, p2) = ss
        if i == j:
            continue
        key = (min(i, j), max(i, j))
        by_pair.setdefault(key, []).append((a, _slot_kind(p1), _slot_kind(p2)))
    for (i, j), arcs in sorted(by_pair.items()):
        over = [a for a, k1, k2 in arcs if k1 and k2]
        under = [a for a, k1, k2 in arcs if not k1 and not k2]
        if over and under:
            return i, j
    return None


def simplify(d: OrientedDiagram) -> OrientedDiagram:
    """Apply Reidemeister I and II reductions until none is left."""
    d = _canonical(d)
    while True:
        i = _find_r1(d)
        if i is not None:
            d = _surgery(d, {i}, _passages(d, i))
            continue
        pair = _find_r2(d)
        if pair is not None:
            i, j = pair
            d = _surgery(d, {i, j}, _passages(d, i) + _passages(d, j))
            continue
        return d


# ---------------------------------------------------------------------------
# Connectivity.
# ---------------------------------------------------------------------------


def split_components(d: OrientedDiagram) -> list:
    """Connected pieces of the diagram; each free loop is its own piece."""
    comp_of = {}
    for ci, cyc in enumerate(d.components):
        for a in cyc:
            comp_of[a] = ci
    n = len(d.components)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, dd in d.crossings:
        for other in (b, c, dd):
            ra, rb = find(comp_of[a]), find(comp_of[other])
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for ci in range(n):
        groups.setdefault(find(ci), []).append(ci)
    pieces = []
    for _, members in sorted(groups.items(), key=lambda kv: min(d.components[c][0] for c in kv[1])):
        member_set = set(members)
        crossings = tuple(x for x in d.crossings if comp_of[x[0]] in member_set)
        components = tuple(d.components[c] for c in sorted(members, key=lambda c: d.components[c][0]))
        pieces.append(_canonical(OrientedDiagram(crossings, components, 0)))
    for _ in range(d.free_loops):
        pieces.append(OrientedDiagram((), (), 1))
    return pieces


# ---------------------------------------------------------------------------
# Isomorphism up to relabeling (small diagrams; testing aid).
# ---------------------------------------------------------------------------


def _iso_key(d: OrientedDiagram, budget: int):
    comps = d.components
    sizes = [len(c) for c in comps]
    states = 1
    for s in sizes:
        states *= s
    perms = 1
    for k in range(2, len(comps) + 1):
        perms *= k
    if states * perms > budget:
        raise DiagramError("diagram too large for brute-force isomorphism check")
    best = None
    for perm in permutations(range(len(comps))):
        for rots in product(*[range(len(comps[p])) for p in perm]):
            new_id = {}
            counter = 1
            for p, r in zip(perm, rots):
                cyc = comps[p]
                for k in range(len(cyc)):
                    new_id[cyc[(r + k) % len(cyc)]] = counter
                    counter += 1
            key = (
                tuple(sorted(tuple(new_id[a] for a in x) for x in d.crossings)),
                tuple(len(comps[p]) for p in perm),
            )
            if best is None or key < best:
                best = key
    return best


def same_diagram(d1: OrientedDiagram, d2: OrientedDiagram, budget: int = 500000) -> bool:
    """Equality up to arc relabeling and component reordering."""
    if d1.free_loops != d2.free_loops or d1.n_crossings != d2.n_crossings:
        return False
    if sorted(len(c) for c in d1.components) != sorted(len(c) for c in d2.components):
        return False
    if not d1.components:
        return True
    return _iso_key(d1, budget) == _iso_key(d2, budget)


# ---------------------------------------------------------------------------
# JSON interchange.
# ---------------------------------------------------------------------------


def to_json_dict(d: OrientedDiagram) -> dict:
    out = {
        "name": d.name,
        "free_loops": d.free_loops,
        "components": [list(c) for c in d.components],
        "crossings": [list(x) for x in d.crossings],
    }
    return out


def from_json_dict(data: dict) -> OrientedDiagram:
    try:
        d = OrientedDiagram(
            crossings=tuple(tuple(int(a) for a in x) for x in data.get("crossings", ())),
            components=tuple(tuple(int(a) for a in c) for c in data.get("components", ())),
            free_loops=int(data.get("free_loops", 0)),
            name=str(data.get("name", "")),
        )
    except (TypeError, ValueError) as exc:
        raise DiagramError(f"malformed diagram object: {exc}") from exc
    return require_valid(d)


def dump_diagram(d: OrientedDiagram, fh) -> None:
    json.dump(to_json_dict(d), fh, indent=2)
    fh.write("\n")


def load_diagram(fh) -> OrientedDiagram:
    try:
        data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DiagramError("diagram file must contain a JSON object")
    return from_json_dict(data)
