"""Position partition A/B/C/D and red-green equivalence classes.

Positions touched by ``s`` or ``t`` but not by a common pair are linked by
alternating ``s``-pairs (green) and ``t``-pairs (red). Each connected component
is a maximal path (types 1-4) or a cycle (type 5).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .structures import Pair, SecondaryStructure, StructureError, _same_length


@dataclass(frozen=True)
class PositionPartition:
    A: frozenset
    B: frozenset
    C: frozenset
    D: frozenset
    B0: frozenset
    B1: frozenset
    B2: frozenset
    BP1: frozenset
    BP2: frozenset


def partition_positions(s: SecondaryStructure, t: SecondaryStructure) -> PositionPartition:
    _same_length(s, t)
    A, B, C, D = set(), set(), set(), set()
    for i in range(1, s.n + 1):
        si, ti = s.partner(i), t.partner(i)
        if si and ti:
            (D if si == ti else A).add(i)
        elif si or ti:
            B.add(i)
        else:
            C.add(i)
    BP1 = frozenset((i, j) for i, j in s.pairs if not t.partner(i) and not t.partner(j))
    BP2 = frozenset((i, j) for i, j in t.pairs if not s.partner(i) and not s.partner(j))
    B1 = frozenset(x for p in BP1 for x in p)
    B2 = frozenset(x for p in BP2 for x in p)
    return PositionPartition(
        A=frozenset(A), B=frozenset(B), C=frozenset(C), D=frozenset(D),
        B0=frozenset(B - B1 - B2), B1=B1, B2=B2, BP1=BP1, BP2=BP2,
    )


class _DisjointSet:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so the representative is the class minimum
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class EquivalenceClass:
    """A maximal alternating path or cycle.

    ``walk`` lists the members from the canonical left end (see
    :func:`classify_path_type`); consecutive members alternate between
    ``s``-pairs and ``t``-pairs, and for type 5 the walk closes on itself.
    """

    members: frozenset
    walk: tuple
    path_type: int
    s_pairs: frozenset
    t_pairs: frozenset

    @property
    def size(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, sorted(self.members))) + "} type=" + str(self.path_type)


def equivalence_classes(s: SecondaryStructure, t: SecondaryStructure,
                        universe: Iterable[int] | None = None) -> list[EquivalenceClass]:
    """Classes of the alternating red/green relation on ``universe``.

    ``universe`` defaults to A ∪ B. Returned sorted by minimum member.
    """
    _same_length(s, t)
    if universe is None:
        part = partition_positions(s, t)
        universe = part.A | part.B
    universe = frozenset(universe)
    ds = _DisjointSet(universe)
    for x in universe:
        for y in (s.partner(x), t.partner(x)):
            if y and y in universe and s.partner(x) != t.partner(x):
                ds.union(x, y)
    groups: dict[int, set[int]] = {}
    for x in universe:
        groups.setdefault(ds.find(x), set()).add(x)
    return [_build_class(frozenset(groups[root]), s, t) for root in sorted(groups)]


def _restrict(struct: SecondaryStructure, members: frozenset, other: SecondaryStructure) -> frozenset:
    return frozenset(p for p in struct.pairs
                     if p[0] in members and p[1] in members and p not in other.pairs)


def _build_class(members: frozenset, s: SecondaryStructure, t: SecondaryStructure) -> EquivalenceClass:
    s_pairs = _restrict(s, members, t)
    t_pairs = _restrict(t, members, s)
    path_type, walk = _classify(members, s, t)
    return EquivalenceClass(members, walk, path_type, s_pairs, t_pairs)


def _end_sets(members, s, t):
    end_s = sorted(x for x in members if not t.partner(x))
    end_t = sorted(x for x in members if not s.partner(x))
    return end_s, end_t


def _classify(members: frozenset, s: SecondaryStructure, t: SecondaryStructure):
    m = len(members)
    end_s, end_t = _end_sets(members, s, t)
    if not end_s and not end_t:
        if m % 2:
            raise StructureError(f"odd cycle {sorted(members)}: inconsistent partition")
        start, first = min(members), t
        path_type = 5
    elif m % 2 == 0 and len(end_s) == 2 and not end_t:
        start, first, path_type = end_s[0], s, 1
    elif m % 2 == 0 and len(end_t) == 2 and not end_s:
        start, first, path_type = end_t[0], t, 4
    elif m % 2 == 1 and len(end_s) == 1 and len(end_t) == 1:
        if end_s[0] < end_t[0]:
            start, first, path_type = end_s[0], s, 2
        else:
            start, first, path_type = end_t[0], t, 3
    else:
        raise StructureError(f"class {sorted(members)} matches no path type")
    walk = _walk(start, first, s, t, m)
    if set(walk) != members:
        raise StructureError(f"class {sorted(members)} is not a single alternating path")
    return path_type, tuple(walk)


def _walk(start: int, first: SecondaryStructure, s, t, m: int) -> list[int]:
    walk = [start]
    cur, use = start, first
    while len(walk) < m:
        nxt = use.partner(cur)
        if not nxt:
            break
        walk.append(nxt)
        cur = nxt
        use = t if use is s else s
    return walk


def classify_path_type(X: EquivalenceClass | Iterable[int], s: SecondaryStructure,
                       t: SecondaryStructure) -> tuple[int, tuple]:
    """Path type (1-5) and the canonical left-to-right walk of a class.

    Type 1 and 2 walks start at ``min(End(s, X))`` with an ``s``-pair, type 3
    and 4 at ``min(End(t, X))`` with a ``t``-pair, and cycles at ``min(X)``
    following its ``t``-pair first.
    """
    members = X.members if isinstance(X, EquivalenceClass) else frozenset(X)
    return _classify(members, s, t)


def end_sets(X: EquivalenceClass, s: SecondaryStructure, t: SecondaryStructure):
    """``(End(s, X), End(t, X))`` as sorted lists."""
    return _end_sets(X.members, s, t)


def class_pairs(X: EquivalenceClass) -> tuple[list[Pair], list[Pair]]:
    return sorted(X.s_pairs), sorted(X.t_pairs)
