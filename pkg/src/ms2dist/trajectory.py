"""MS2 folding trajectories by exact 0/1 programming and by cheaper heuristics."""

from __future__ import annotations

import heapq
import itertools
from collections import Counter

from .conflict_graph import (
    STRICT, ClosedTwoCycle, ConflictDigraph, TripletNode, build_coarse_digraph,
    build_conflict_digraph, closed_two_cycle_for, node_key,
)
from .moves import (
    Move, Trajectory, _apply_inplace, apply_move, verify_trajectory,
)
from .optimize import (
    DEFAULT_MAX_CYCLES, CycleCapExceeded, ZeroOneProgram, enumerate_simple_cycles,
    solve_max_binary, topological_sort,
)
from .partition import equivalence_classes, partition_positions
from .pkms2 import pk_lower_bound
from .structures import Pair, SecondaryStructure, _same_length, cross, ordered

__all__ = [
    "Move", "Trajectory", "apply_move", "verify_trajectory", "ms2_exact",
    "ms2_near_optimal", "ms2_greedy", "ms2_branch_and_bound", "SearchBudgetExceeded",
]

DEFAULT_NODE_BUDGET = 10_000_000


class SearchBudgetExceeded(RuntimeError):
    pass


class _Builder:
    """Mutable structure that records every move applied to it."""

    def __init__(self, s: SecondaryStructure):
        self.start = s
        self.pairs = set(s.pairs)
        self.partner = {}
        for i, j in self.pairs:
            self.partner[i], self.partner[j] = j, i
        self.moves: list[Move] = []

    def _do(self, m: Move) -> None:
        _apply_inplace(self.pairs, self.partner, m, self.start.theta, self.start.n, False)
        self.moves.append(m)

    def remove(self, p: Pair) -> None:
        self._do(Move.remove(*p))

    def remove_if_present(self, p: Pair) -> None:
        if p in self.pairs:
            self.remove(p)

    def add(self, p: Pair) -> None:
        self._do(Move.add(*p))

    def shift(self, v: TripletNode) -> None:
        self._do(Move.shift(v.s_pair, v.t_pair))

    def snapshot(self) -> SecondaryStructure:
        return SecondaryStructure(frozenset(self.pairs), self.start.n, self.start.theta)

    def guarded_shift(self, v: TripletNode) -> bool:
        """Shift ``v`` after clearing whatever blocks its target pair.

        Skips the shift when the source pair is gone or the target already
        present. A pair on the far end of the target is removed first (it
        would form a base triple), then any pair crossing the target.
        """
        frm, to = v.s_pair, v.t_pair
        if frm not in self.pairs or to in self.pairs:
            return False
        u = self.partner.get(v.x)
        if u is not None:
            self.remove(ordered(u, v.x))
        for q in sorted(q for q in self.pairs if q != frm and cross(q, to)):
            self.remove(q)
        self.shift(v)
        return True

    def finish(self, t: SecondaryStructure, first_adds=()) -> None:
        for p in sorted(self.pairs - t.pairs):
            self.remove(p)
        first = sorted(p for p in first_adds if p not in self.pairs)
        for p in first:
            self.add(p)
        for p in sorted(t.pairs - self.pairs):
            self.add(p)

    def trajectory(self, **info) -> Trajectory:
        return Trajectory(self.start, tuple(self.moves), info=info)


def _select_shifts(graph: ConflictDigraph, candidates: list[TripletNode], max_cycles: int,
                   prefer: str) -> tuple[set, int]:
    """Maximum set of shift nodes with an acyclic induced graph and no shared pairs."""
    sub = graph.induced(candidates)
    nodes = list(sub.nodes)
    found = enumerate_simple_cycles(nodes, sub.edges, max_cycles, key=node_key)
    if found.truncated:
        raise CycleCapExceeded(max_cycles)
    index = {v: k for k, v in enumerate(nodes)}
    prog = ZeroOneProgram(len(nodes))
    seen = set()
    for c in found.cycles:
        members = frozenset(index[v] for v in c)
        if members not in seen:
            seen.add(members)
            prog.add_cover(members)
    for a, b in itertools.combinations(nodes, 2):
        if len(a.flatten() & b.flatten()) == 2:
            prog.add_exclusion(index[a], index[b])
    _, x = solve_max_binary(prog, prefer)
    return {v for v in nodes if x[index[v]]}, len(found)


def _shift_order(graph: ConflictDigraph, chosen) -> list[TripletNode]:
    sub = graph.induced(chosen)
    return topological_sort(list(sub.nodes), sub.successors)


def _fits(graph: ConflictDigraph, chosen: set, v: TripletNode) -> bool:
    if any(len(v.flatten() & u.flatten()) == 2 for u in chosen):
        return False
    trial = graph.induced(chosen).with_nodes([v])
    try:
        topological_sort(list(trial.nodes), trial.successors)
    except ValueError:
        return False
    return True


def _reinsert_two_cycles(graph: ConflictDigraph, chosen: set, cycles: list[ClosedTwoCycle],
                         locality: int | None) -> list[Pair]:
    """Give each closed 2-cycle one shift if the schedule stays acyclic.

    Returns the 2-cycle pairs of ``s`` that must be removed instead.
    """
    doomed = []
    for c in cycles:
        s_pairs = {v.s_pair for v in c.nodes}
        pick = None
        for v in c.nodes:
            if locality is not None and v.displacement > locality:
                continue
            if _fits(graph, chosen, v):
                pick = v
                break
        if pick is None:
            doomed.extend(sorted(s_pairs))
        else:
            chosen.add(pick)
            doomed.extend(sorted(s_pairs - {pick.s_pair}))
    return doomed


def ms2_exact(s: SecondaryStructure, t: SecondaryStructure, *, locality: int | None = None,
              max_cycles: int = DEFAULT_MAX_CYCLES, relation: str = STRICT,
              prefer: str = "smallest") -> Trajectory:
    """Minimum-length MS2 trajectory from ``s`` to ``t``.

    Shifts are chosen by a maximum feedback-vertex-set style 0/1 program over
    the conflict digraph; ``locality`` only admits shifts whose moving end
    travels at most that far. ``prefer`` breaks ties among optimal selections.
    """
    _same_length(s, t)
    part = partition_positions(s, t)
    b = _Builder(s)
    for p in sorted(part.BP1):
        b.remove(p)
    cur = b.snapshot()
    classes = equivalence_classes(cur, t)
    two_cycles = [c for X in classes if (c := closed_two_cycle_for(X, cur, t)) is not None]
    graph = build_conflict_digraph(cur, t, locality=locality, relation=relation)
    withheld = {v for c in two_cycles for v in c.nodes}
    candidates = [v for v in graph.nodes if v not in withheld]
    chosen, n_cycles = _select_shifts(graph, candidates, max_cycles, prefer)
    doomed = _reinsert_two_cycles(graph, chosen, two_cycles, locality)
    for p in doomed:
        b.remove(p)
    keep = {v.s_pair for v in chosen}
    for p in sorted(b.pairs - t.pairs - keep):
        b.remove(p)
    for v in _shift_order(graph, chosen):
        b.shift(v)
    b.finish(t, part.BP2)
    return b.trajectory(nodes=len(graph), edges=graph.num_edges, cycles=n_cycles,
                        closed_2cycles=len(two_cycles), truncated=False)


def ms2_near_optimal(s: SecondaryStructure, t: SecondaryStructure, *,
                     max_cycles: int = DEFAULT_MAX_CYCLES, prefer: str = "smallest") -> Trajectory:
    """Two-stage trajectory: feedback arcs between classes, then shifts class by class."""
    _same_length(s, t)
    part = partition_positions(s, t)
    b = _Builder(s)
    for p in sorted(part.BP1):
        b.remove(p)
    fas_rounds = 0
    while True:
        cur = b.snapshot()
        classes = equivalence_classes(cur, t)
        coarse = build_coarse_digraph(cur, t, classes)
        arcs = coarse.edges
        found = enumerate_simple_cycles(range(1, coarse.size + 1), arcs, max_cycles)
        if found.truncated:
            raise CycleCapExceeded(max_cycles)
        if not found.cycles:
            break
        fas_rounds += 1
        index = {e: k for k, e in enumerate(arcs)}
        prog = ZeroOneProgram(len(arcs), [coarse.weight(*e) for e in arcs])
        for c in found.cycles:
            prog.add_cover(index[(c[k], c[(k + 1) % len(c)])] for k in range(len(c)))
        _, x = solve_max_binary(prog, prefer)
        for e in arcs:
            if not x[index[e]]:
                for p in sorted(coarse.crossing[e]):
                    b.remove_if_present(p)

    order = topological_sort(list(range(1, coarse.size + 1)), coarse.successors)
    n_nodes = n_edges = n_cycles = 0
    for ci in order:
        X = classes[ci - 1]
        cur = b.snapshot()
        two = closed_two_cycle_for(X, cur, t)
        if two is not None:
            b.remove(two.removed_pair)
            b.guarded_shift(two.nodes[0])
            continue
        local = build_conflict_digraph(cur, t, members=X.members)
        n_nodes += len(local)
        n_edges += local.num_edges
        chosen, k = _select_shifts(local, list(local.nodes), max_cycles, prefer)
        n_cycles += k
        keep = {v.s_pair for v in chosen}
        for p in sorted(X.s_pairs - keep):
            b.remove_if_present(p)
        for v in _shift_order(local, chosen):
            b.guarded_shift(v)
        # leftovers: shift when a node exists for the pair, remove otherwise
        for p in sorted(q for q in b.pairs - t.pairs if q[0] in X.members and q[1] in X.members):
            if p not in b.pairs:
                continue
            moved = False
            for y, z in (p, p[::-1]):
                x_ = t.partner(y)
                if x_ and x_ != z:
                    moved = b.guarded_shift(TripletNode(x_, y, z))
                    if moved:
                        break
            if not moved:
                b.remove_if_present(p)
    b.finish(t, part.BP2)
    return b.trajectory(nodes=n_nodes, edges=n_edges, cycles=n_cycles,
                        fas_rounds=fas_rounds, truncated=False)


def ms2_greedy(s: SecondaryStructure, t: SecondaryStructure, *,
               max_cycles: int = DEFAULT_MAX_CYCLES, relation: str = STRICT) -> Trajectory:
    """Drop the node on most cycles until the conflict digraph is acyclic, then shift the rest."""
    _same_length(s, t)
    part = partition_positions(s, t)
    b = _Builder(s)
    for p in sorted(part.BP1):
        b.remove(p)
    graph = build_conflict_digraph(b.snapshot(), t, relation=relation)
    found = enumerate_simple_cycles(graph.nodes, graph.edges, max_cycles, key=node_key)
    if found.truncated:
        raise CycleCapExceeded(max_cycles)
    live = [set(c) for c in found.cycles]
    dropped = set()
    while live:
        counts = Counter(v for c in live for v in c)
        top = max(counts.values())
        v0 = min((v for v, k in counts.items() if k == top), key=node_key)
        dropped.add(v0)
        live = [c for c in live if v0 not in c]
        b.remove_if_present(v0.s_pair)
    kept = [v for v in graph.nodes if v not in dropped]
    for v in _shift_order(graph, kept):
        b.guarded_shift(v)
    b.finish(t, part.BP2)
    return b.trajectory(nodes=len(graph), edges=graph.num_edges, cycles=len(found),
                        dropped=len(dropped), truncated=False)


def _conflicts(v: TripletNode, t_pairs) -> int:
    return sum(1 for q in t_pairs if cross(v.s_pair, q))


def ms2_branch_and_bound(s: SecondaryStructure, t: SecondaryStructure, *,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> Trajectory:
    """Best-first search over removals and direct shifts, bounded by the pk-MS2 distance.

    Additions are deferred to the end, where the remaining ``t``-pairs are
    added in one sweep. Search states are ordered by ``dist + bound`` so the
    first completed state is optimal.
    """
    _same_length(s, t)
    part = partition_positions(s, t)
    t_pairs = frozenset(t.pairs)
    root = frozenset(s.pairs - part.BP1)
    prefix = [Move.remove(*p) for p in sorted(part.BP1)]
    best_len = len(root ^ t_pairs)
    best_path: tuple | None = None  # None: fall back to plain removals and additions
    counter = itertools.count()
    heap = [(pk_lower_bound(root, t_pairs), next(counter), 0, root, ())]
    seen = {root: 0}
    expanded = 0
    while heap:
        f, _, dist, cur, path = heapq.heappop(heap)
        if f >= best_len:
            break
        if seen.get(cur, dist) < dist:
            continue
        expanded += 1
        if expanded > node_budget:
            raise SearchBudgetExceeded(f"more than {node_budget} search states expanded")
        pending = cur - t_pairs
        if not pending:
            total = dist + len(t_pairs - cur)
            if total < best_len:
                best_len, best_path = total, path
            continue
        partner = {}
        for i, j in cur:
            partner[i], partner[j] = j, i
        moves = []
        for p in pending:
            for y, z in (p, p[::-1]):
                x = t.partner(y)
                if not x or x == z or x in partner:
                    continue
                q = ordered(x, y)
                if any(cross(q, r) for r in cur if r != p):
                    continue
                moves.append((-_conflicts(TripletNode(x, y, z), t_pairs), 0, node_key(TripletNode(x, y, z)),
                              Move.shift(p, q)))
        for p in sorted(pending):
            moves.append((0, 1, p, Move.remove(*p)))
        moves.sort(key=lambda m: m[:3])
        for *_, m in moves:
            nxt = set(cur)
            nxt.discard(m.pair)
            if m.to_pair is not None:
                nxt.add(m.to_pair)
            nxt = frozenset(nxt)
            nd = dist + 1
            if seen.get(nxt, nd + 1) <= nd:
                continue
            lb = pk_lower_bound(nxt, t_pairs)
            if nd + lb >= best_len:
                continue
            seen[nxt] = nd
            heapq.heappush(heap, (nd + lb, next(counter), nd, nxt, path + (m,)))
    b = _Builder(s)
    for m in prefix:
        b._do(m)
    if best_path is None:
        b.finish(t, part.BP2)
    else:
        for m in best_path:
            b._do(m)
        b.finish(t, part.BP2)
    return b.trajectory(expanded=expanded)
