"""Cycle enumeration, a small 0/1 program solver and deterministic topological sort."""

from __future__ import annotations

import sys

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx

DEFAULT_MAX_CYCLES = 50_000_000


class CycleCapExceeded(RuntimeError):
    """More simple cycles than the configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"more than {cap} simple cycles; raise --max-cycles or use another method")
        self.cap = cap


class CycleError(ValueError):
    """Raised when a topological order is requested for a cyclic digraph."""


@dataclass(frozen=True)
class CycleEnumeration:
    cycles: list
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.cycles)


def least_rotation(cycle: Sequence, key: Callable = lambda v: v) -> tuple:
    k = min(range(len(cycle)), key=lambda i: key(cycle[i]))
    return tuple(cycle[k:]) + tuple(cycle[:k])


def enumerate_simple_cycles(nodes: Sequence[Hashable], edges: Iterable[tuple],
                            max_cycles: int = DEFAULT_MAX_CYCLES,
                            key: Callable = lambda v: v) -> CycleEnumeration:
    """All simple directed cycles, each rotated to start at its least node.

    Stops after ``max_cycles`` cycles and flags the result as truncated.
    Output is sorted by length, then lexicographically under ``key``.
    """
    g = nx.DiGraph()
    g.add_nodes_from(sorted(nodes, key=key))
    g.add_edges_from(sorted(edges, key=lambda e: (key(e[0]), key(e[1]))))
    found = []
    truncated = False
    for c in nx.simple_cycles(g):
        if len(found) == max_cycles:
            truncated = True
            break
        found.append(least_rotation(c, key))
    found.sort(key=lambda c: (len(c), [key(v) for v in c]))
    return CycleEnumeration(found, truncated)


@dataclass
class ZeroOneProgram:
    """Maximize ``sum(w[i] * x[i])`` over binary ``x``.

    Every constraint ``(members, bound)`` reads ``sum(x[i] for i in members) <= bound``.
    Cycle-cover constraints use ``bound = len(members) - 1`` and pair
    exclusions use ``bound = 1`` on two members.
    """

    num_vars: int
    weights: list = field(default_factory=list)
    constraints: list = field(default_factory=list)

    def __post_init__(self):
        if not self.weights:
            self.weights = [1] * self.num_vars
        if len(self.weights) != self.num_vars:
            raise ValueError("one weight per variable")

    def add_cover(self, members: Iterable[int]) -> None:
        m = tuple(sorted(set(members)))
        self.constraints.append((m, len(m) - 1))

    def add_exclusion(self, u: int, v: int) -> None:
        self.constraints.append((tuple(sorted((u, v))), 1))

    def feasible(self, x: Sequence[int]) -> bool:
        return all(sum(x[i] for i in m) <= b for m, b in self.constraints)

    def value(self, x: Sequence[int]) -> int:
        return sum(w * xi for w, xi in zip(self.weights, x))


def _suffix_bounds(program: ZeroOneProgram) -> list[int]:
    """``bound[i]`` over-estimates the best value reachable from variables ``i..n-1``.

    Each constraint forcing a zero among variables all at index ``>= i`` costs at
    least its cheapest member; a greedy disjoint packing of such constraints is
    subtracted from the plain weight sum.
    """
    n, w = program.num_vars, program.weights
    plain = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        plain[i] = plain[i + 1] + max(w[i], 0)
    tight = [(m, b) for m, b in program.constraints if len(m) - b == 1]
    # constraints starting at >= i form a prefix of this order, so one pass
    # extends the packing as i decreases
    by_start = sorted(tight, key=lambda c: (-c[0][0], len(c[0])))
    bound = plain[:]
    taken: set[int] = set()
    cut, k = 0, 0
    for i in range(n - 1, -1, -1):
        while k < len(by_start) and by_start[k][0][0] >= i:
            members = by_start[k][0]
            if taken.isdisjoint(members):
                taken.update(members)
                cut += min(max(w[j], 0) for j in members)
            k += 1
        bound[i] = plain[i] - cut
    return bound


def solve_max_binary(program: ZeroOneProgram, prefer: str = "smallest") -> tuple[int, list[int]]:
    """Exact optimum by depth-first branch and bound.

    Among optimal assignments the one returned is lexicographically smallest
    in variable order (``prefer="smallest"``) or greatest (``"greatest"``).
    """
    if prefer not in ("smallest", "greatest"):
        raise ValueError("prefer must be 'smallest' or 'greatest'")
    n, w = program.num_vars, program.weights
    touching: list[list[int]] = [[] for _ in range(n)]
    limits = []
    for ci, (members, b) in enumerate(program.constraints):
        if b < 0:
            raise ValueError("infeasible constraint with negative bound")
        limits.append(b)
        for i in members:
            touching[i].append(ci)
    used = [0] * len(limits)
    bound = _suffix_bounds(program)
    x = [0] * n
    best = [-1, [0] * n]
    # the first optimum found is kept, so branch order fixes the tie-break
    order = (0, 1) if prefer == "smallest" else (1, 0)

    def go(i: int, val: int) -> None:
        if val + bound[i] <= best[0]:
            return
        if i == n:
            best[0], best[1] = val, x[:]
            return
        for choice in order:
            if choice == 0:
                go(i + 1, val)
            elif all(used[ci] < limits[ci] for ci in touching[i]):
                x[i] = 1
                for ci in touching[i]:
                    used[ci] += 1
                go(i + 1, val + w[i])
                x[i] = 0
                for ci in touching[i]:
                    used[ci] -= 1

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 100))
    try:
        go(0, 0)
    finally:
        sys.setrecursionlimit(limit)
    return best[0], best[1]


def topological_sort(nodes: Sequence[Hashable], successors: Callable[[Hashable], Iterable]) -> list:
    """Reverse DFS finish order; roots and successors are visited in the given order."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in nodes}
    finished = []
    for root in nodes:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        stack = [(root, iter(successors(root)))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if w not in colour:
                    continue
                if colour[w] == GREY:
                    raise CycleError(f"digraph has a cycle through {w}")
                if colour[w] == WHITE:
                    colour[w] = GREY
                    stack.append((w, iter(successors(w))))
                    break
            else:
                colour[v] = BLACK
                finished.append(v)
                stack.pop()
    finished.reverse()
    return finished


def is_acyclic(nodes: Sequence[Hashable], successors: Callable) -> bool:
    try:
        topological_sort(nodes, successors)
    except CycleError:
        return False
    return True
