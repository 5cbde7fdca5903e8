"""RNA conflict digraphs over potential shift moves.

A triplet node ``(x, y, z)`` stands for shifting the ``s``-pair ``{y, z}`` to
the ``t``-pair ``{x, y}`` around the pivot ``y``. An edge ``n1 -> n2`` means
shift ``n1`` must happen before shift ``n2``, otherwise ``n2``'s new pair
would touch or cross ``n1``'s old one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .partition import EquivalenceClass, equivalence_classes
from .structures import Pair, SecondaryStructure, cross, ordered


class TripletNode(NamedTuple):
    x: int
    y: int
    z: int

    @property
    def pivot(self) -> int:
        return self.y

    @property
    def t_pair(self) -> Pair:
        return ordered(self.x, self.y)

    @property
    def s_pair(self) -> Pair:
        return ordered(self.y, self.z)

    def flatten(self) -> frozenset:
        return frozenset(self)

    @property
    def displacement(self) -> int:
        """How far the moving end travels, ``|x - z|``."""
        return abs(self.x - self.z)

    def __str__(self) -> str:
        return f"({self.x},{self.y},{self.z})"


def node_key(v: TripletNode) -> tuple[int, int, int]:
    """Sort key for the pivot-first node order."""
    return (v.y, v.x, v.z)


def classify_node_type(v: TripletNode) -> int:
    x, y, z = v
    if x < y < z:
        return 1
    if z < y < x:
        return 2
    if y < z < x:
        return 3
    if y < x < z:
        return 4
    if z < x < y:
        return 5
    if x < z < y:
        return 6
    raise ValueError(f"node {v} has repeated positions")


def touches(p: Pair, q: Pair) -> bool:
    return len({p[0], p[1]} & {q[0], q[1]}) == 1


STRICT, GENERAL = "strict", "general"


def precedes(n1: TripletNode, n2: TripletNode, relation: str = STRICT) -> bool:
    """Edge relation: ``n1.s`` touches or crosses ``n2.t``.

    The strict relation also demands that the nodes overlap in at most one
    position. The general one drops that condition; the extra edges only
    join nodes the pair-exclusion constraint already keeps apart.
    """
    if n1 == n2:
        return False
    if relation == STRICT and len(n1.flatten() & n2.flatten()) > 1:
        return False
    p, q = n1.s_pair, n2.t_pair
    return touches(p, q) or cross(p, q)


@dataclass(frozen=True)
class ConflictDigraph:
    nodes: tuple
    edges: frozenset
    relation: str = STRICT

    def __post_init__(self):
        succ = {v: [] for v in self.nodes}
        pred = {v: [] for v in self.nodes}
        for a, b in sorted(self.edges, key=lambda e: (node_key(e[0]), node_key(e[1]))):
            succ[a].append(b)
            pred[b].append(a)
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    def successors(self, v: TripletNode) -> list:
        return self._succ[v]

    def predecessors(self, v: TripletNode) -> list:
        return self._pred[v]

    def __contains__(self, v) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def induced(self, keep: Iterable[TripletNode]) -> "ConflictDigraph":
        keep = set(keep)
        nodes = tuple(v for v in self.nodes if v in keep)
        edges = frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        return ConflictDigraph(nodes, edges, self.relation)

    def with_nodes(self, extra: Iterable[TripletNode]) -> "ConflictDigraph":
        """Graph on ``nodes + extra`` with edges recomputed for the new nodes."""
        nodes = sorted(set(self.nodes) | set(extra), key=node_key)
        new = set(extra) - set(self.nodes)
        edges = set(self.edges)
        for a in new:
            for b in nodes:
                if precedes(a, b, self.relation):
                    edges.add((a, b))
                if precedes(b, a, self.relation):
                    edges.add((b, a))
        return ConflictDigraph(tuple(nodes), frozenset(edges), self.relation)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.nodes:
            lines.append(f'  "{v}";')
        for v in self.nodes:
            for w in self._succ[v]:
                lines.append(f'  "{v}" -> "{w}";')
        lines.append("}")
        return "\n".join(lines)


def conflict_nodes(s: SecondaryStructure, t: SecondaryStructure,
                   members: Iterable[int] | None = None,
                   locality: int | None = None) -> list[TripletNode]:
    positions = range(1, s.n + 1) if members is None else sorted(members)
    nodes = []
    for y in positions:
        z, x = s.partner(y), t.partner(y)
        if z and x and z != x:
            v = TripletNode(x, y, z)
            if locality is None or v.displacement <= locality:
                nodes.append(v)
    nodes.sort(key=node_key)
    return nodes


def build_conflict_digraph(s: SecondaryStructure, t: SecondaryStructure,
                           members: Iterable[int] | None = None,
                           locality: int | None = None,
                           relation: str = STRICT) -> ConflictDigraph:
    """Conflict digraph of ``(s, t)``.

    ``members`` restricts vertices to triplets inside one set of positions
    (a class-local digraph); ``locality`` drops shifts whose moving end
    travels more than that many positions.
    """
    if relation not in (STRICT, GENERAL):
        raise ValueError(f"unknown edge relation {relation!r}")
    nodes = conflict_nodes(s, t, members, locality)
    edges = set()
    for a in nodes:
        for b in nodes:
            if precedes(a, b, relation):
                edges.add((a, b))
    return ConflictDigraph(tuple(nodes), frozenset(edges), relation)


@dataclass(frozen=True)
class ClosedTwoCycle:
    positions: tuple
    case: str
    nodes: tuple

    @property
    def removed_pair(self) -> Pair:
        """The ``s``-pair removed by the canonical three-move treatment."""
        a1, a2, a3, a4 = self.positions
        return (a1, a4) if self.case == "A" else (a1, a2)


def closed_two_cycle_for(X: EquivalenceClass, s: SecondaryStructure,
                         t: SecondaryStructure) -> ClosedTwoCycle | None:
    if X.path_type != 5 or X.size != 4:
        return None
    a1, a2, a3, a4 = sorted(X.members)
    outer_inner = {(a1, a4), (a2, a3)}
    side_by_side = {(a1, a2), (a3, a4)}
    if set(X.t_pairs) == side_by_side and set(X.s_pairs) == outer_inner:
        nodes = (TripletNode(a1, a2, a3), TripletNode(a3, a4, a1),
                 TripletNode(a2, a1, a4), TripletNode(a4, a3, a2))
        return ClosedTwoCycle((a1, a2, a3, a4), "A", nodes)
    if set(X.s_pairs) == side_by_side and set(X.t_pairs) == outer_inner:
        nodes = (TripletNode(a1, a4, a3), TripletNode(a4, a1, a2),
                 TripletNode(a2, a3, a4), TripletNode(a3, a2, a1))
        return ClosedTwoCycle((a1, a2, a3, a4), "B", nodes)
    return None


def detect_closed_2cycles(s: SecondaryStructure, t: SecondaryStructure,
                          classes: list[EquivalenceClass] | None = None) -> list[ClosedTwoCycle]:
    if classes is None:
        classes = equivalence_classes(s, t)
    found = []
    for X in classes:
        c = closed_two_cycle_for(X, s, t)
        if c is not None:
            found.append(c)
    return found


FORWARD, BACKWARD, TWO_CYCLE, TOUCH = "forward", "backward", "twoCycle", "touch"


def classify_edge(n1: TripletNode, n2: TripletNode):
    """Classify the relation between two nodes under the crossing relation.

    Returns ``(kind, (left_type, right_type))`` where left/right refer to the
    node with the smaller/larger pivot, or ``None`` if no edge joins them.
    ``kind`` is ``"forward"`` for an edge from the left node to the right,
    ``"backward"`` for the reverse, ``"twoCycle"`` when both crossing edges
    exist and ``"touch"`` for a touching (not crossing) edge.
    """
    left, right = (n1, n2) if n1.y < n2.y else (n2, n1)
    types = (classify_node_type(left), classify_node_type(right))
    fwd = cross(left.s_pair, right.t_pair)
    bwd = cross(right.s_pair, left.t_pair)
    if fwd and bwd:
        return TWO_CYCLE, types
    if fwd:
        return FORWARD, types
    if bwd:
        return BACKWARD, types
    if precedes(n1, n2) or precedes(n2, n1):
        return TOUCH, types
    return None


@dataclass(frozen=True)
class CoarseDigraph:
    """Digraph on class indices ``1..m``; ``crossing[(i, j)]`` is the pair set N_ij."""

    size: int
    crossing: dict

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.crossing)

    def weight(self, i: int, j: int) -> int:
        return len(self.crossing[(i, j)])

    def successors(self, i: int) -> list[int]:
        return [b for (a, b) in self.edges if a == i]


def build_coarse_digraph(s: SecondaryStructure, t: SecondaryStructure,
                         classes: list[EquivalenceClass]) -> CoarseDigraph:
    crossing: dict[tuple[int, int], frozenset] = {}
    for i, Xi in enumerate(classes, start=1):
        for j, Xj in enumerate(classes, start=1):
            if i == j:
                continue
            hit = frozenset(p for p in Xi.s_pairs if any(cross(p, q) for q in Xj.t_pairs))
            if hit:
                crossing[(i, j)] = hit
    return CoarseDigraph(len(classes), crossing)
