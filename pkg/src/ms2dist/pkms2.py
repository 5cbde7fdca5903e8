"""Shortest MS2 trajectories when pseudoknotted intermediates are allowed.

Each equivalence class is solved independently by a fixed move pattern that
depends only on its path type; pairs of ``s`` untouched by ``t`` are removed
first and pairs of ``t`` untouched by ``s`` are added last.
"""

from __future__ import annotations

from .moves import Move, Trajectory
from .partition import EquivalenceClass, equivalence_classes, partition_positions
from .structures import SecondaryStructure, _same_length


def path_subroutine(X: EquivalenceClass) -> list[Move]:
    """Moves turning ``s`` restricted to ``X`` into ``t`` restricted to ``X``."""
    w = X.walk
    m = len(w)
    k = m // 2
    moves: list[Move] = []
    if X.path_type == 1:
        # w = b1, a1, b2, a2, ..., b_k, a_k
        b = w[0::2]
        a = w[1::2]
        moves.append(Move.remove(b[k - 1], a[k - 1]))
        for i in range(k - 2, -1, -1):
            moves.append(Move.shift((b[i], a[i]), (a[i], b[i + 1])))
    elif X.path_type == 2:
        # w = b0, a1, b1, ..., a_k, b_k
        b = w[0::2]
        a = (None,) + w[1::2]
        for i in range(k, 0, -1):
            moves.append(Move.shift((b[i - 1], a[i]), (a[i], b[i])))
    elif X.path_type == 3:
        # w = a0, b1, a1, ..., b_k, a_k
        a = w[0::2]
        b = (None,) + w[1::2]
        for i in range(1, k + 1):
            moves.append(Move.shift((b[i], a[i]), (a[i - 1], b[i])))
    elif X.path_type in (4, 5):
        # w = a1, b1, a2, b2, ..., a_k, b_k
        a = w[0::2]
        b = w[1::2]
        if X.path_type == 5:
            moves.append(Move.remove(b[k - 1], a[0]))
        for i in range(k - 1):
            moves.append(Move.shift((b[i], a[i + 1]), (a[i], b[i])))
        moves.append(Move.add(a[k - 1], b[k - 1]))
    else:
        raise ValueError(f"unclassified class {sorted(X.members)}")
    return moves


def subroutine_length(X: EquivalenceClass) -> int:
    """Closed form of ``len(path_subroutine(X))``."""
    longest = max(len(X.s_pairs), len(X.t_pairs))
    return longest + 1 if X.path_type == 5 else longest


def pk_ms2_trajectory(s: SecondaryStructure, t: SecondaryStructure) -> tuple[Trajectory, int]:
    _same_length(s, t)
    part = partition_positions(s, t)
    moves = [Move.remove(*p) for p in sorted(part.BP1)]
    for X in equivalence_classes(s, t, part.A | part.B0):
        moves.extend(path_subroutine(X))
    moves.extend(Move.add(*p) for p in sorted(part.BP2))
    traj = Trajectory(s, tuple(moves), allow_pk=True)
    return traj, len(moves)


def pk_ms2_distance(s: SecondaryStructure, t: SecondaryStructure) -> int:
    part = partition_positions(s, t)
    return (len(part.BP1) + len(part.BP2)
            + sum(subroutine_length(X) for X in equivalence_classes(s, t, part.A | part.B0)))


def pk_lower_bound(s_pairs, t_pairs) -> int:
    """pk-MS2 distance between two raw pair sets (used as a search bound)."""
    s_partner, t_partner = {}, {}
    for i, j in s_pairs:
        s_partner[i], s_partner[j] = j, i
    for i, j in t_pairs:
        t_partner[i], t_partner[j] = j, i
    seen = set()
    total = 0
    for start in list(s_partner) + list(t_partner):
        if start in seen or s_partner.get(start) == t_partner.get(start):
            continue
        # flood the component, counting pairs of each colour
        stack = [start]
        seen.add(start)
        n_s = n_t = 0
        ends = 0
        while stack:
            x = stack.pop()
            sx, tx = s_partner.get(x), t_partner.get(x)
            if sx is None or tx is None:
                ends += 1
            for y, is_s in ((sx, True), (tx, False)):
                if y is None:
                    continue
                if x < y:
                    if is_s:
                        n_s += 1
                    else:
                        n_t += 1
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        total += max(n_s, n_t) + (1 if ends == 0 else 0)
    return total

