"""Moves, trajectories, move application and trajectory validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .structures import (
    Pair, SecondaryStructure, StructureError, base_pair_distance, cross, ordered,
    to_dot_bracket,
)

ADD, REMOVE, SHIFT = "add", "remove", "shift"


class IllegalMove(StructureError):
    pass


@dataclass(frozen=True)
class Move:
    """One MS2 step. For shifts ``pair`` is the pair removed and ``to_pair`` the one created."""

    kind: str
    pair: Pair
    to_pair: Pair | None = None

    def __post_init__(self):
        object.__setattr__(self, "pair", ordered(*self.pair))
        if self.kind == SHIFT:
            if self.to_pair is None:
                raise ValueError("shift needs a target pair")
            object.__setattr__(self, "to_pair", ordered(*self.to_pair))
            if len(set(self.pair) & set(self.to_pair)) != 1:
                raise ValueError(f"shift {self.pair} -> {self.to_pair} must keep exactly one position")
        elif self.kind in (ADD, REMOVE):
            if self.to_pair is not None:
                raise ValueError(f"{self.kind} takes a single pair")
        else:
            raise ValueError(f"unknown move kind {self.kind!r}")

    @classmethod
    def add(cls, i: int, j: int) -> "Move":
        return cls(ADD, (i, j))

    @classmethod
    def remove(cls, i: int, j: int) -> "Move":
        return cls(REMOVE, (i, j))

    @classmethod
    def shift(cls, frm: Pair, to: Pair) -> "Move":
        return cls(SHIFT, frm, to)

    @property
    def pivot(self) -> int | None:
        if self.kind != SHIFT:
            return None
        return (set(self.pair) & set(self.to_pair)).pop()

    def annotation(self) -> str:
        i, j = self.pair
        if self.kind == SHIFT:
            k, l = self.to_pair
            return f"({i},{j})\t-> ({k},{l})"
        return f"{self.kind}\t({i},{j})"

    def __str__(self) -> str:
        i, j = self.pair
        if self.kind == SHIFT:
            k, l = self.to_pair
            return f"shift ({i},{j}) to ({k},{l})"
        return f"{self.kind} ({i},{j})"


def _check_new_pair(pairs: set, partner: dict, p: Pair, theta: int, n: int,
                    allow_pk: bool, ignore: Pair | None = None) -> None:
    i, j = p
    if not 1 <= i < j <= n:
        raise IllegalMove(f"pair {p} outside 1..{n}")
    if j - i <= theta:
        raise IllegalMove(f"pair {p} violates hairpin threshold (theta={theta})")
    for x in p:
        q = partner.get(x)
        if q is not None and ordered(x, q) != ignore:
            raise IllegalMove(f"pair {p} creates a base triple at position {x}")
    if not allow_pk:
        for q in pairs:
            if q != ignore and cross(p, q):
                raise IllegalMove(f"pair {p} crosses {q} (pseudoknot)")


def _apply_inplace(pairs: set, partner: dict, move: Move, theta: int, n: int,
                   allow_pk: bool) -> None:
    if move.kind == REMOVE:
        if move.pair not in pairs:
            raise IllegalMove(f"cannot remove absent pair {move.pair}")
        pairs.discard(move.pair)
        i, j = move.pair
        del partner[i], partner[j]
    elif move.kind == ADD:
        if move.pair in pairs:
            raise IllegalMove(f"cannot add present pair {move.pair}")
        _check_new_pair(pairs, partner, move.pair, theta, n, allow_pk)
        pairs.add(move.pair)
        i, j = move.pair
        partner[i], partner[j] = j, i
    else:
        if move.pair not in pairs:
            raise IllegalMove(f"cannot shift absent pair {move.pair}")
        if move.to_pair in pairs:
            raise IllegalMove(f"shift target {move.to_pair} already present")
        _check_new_pair(pairs, partner, move.to_pair, theta, n, allow_pk, ignore=move.pair)
        pairs.discard(move.pair)
        i, j = move.pair
        del partner[i], partner[j]
        pairs.add(move.to_pair)
        k, l = move.to_pair
        partner[k], partner[l] = l, k


def apply_move(structure: SecondaryStructure, move: Move, allow_pk: bool = False) -> SecondaryStructure:
    """Return the structure obtained by applying ``move``; raise :class:`IllegalMove` if invalid."""
    pairs = set(structure.pairs)
    partner = {}
    for i, j in pairs:
        partner[i], partner[j] = j, i
    _apply_inplace(pairs, partner, move, structure.theta, structure.n, allow_pk)
    return SecondaryStructure(frozenset(pairs), structure.n, structure.theta,
                              allow_pk or structure.allow_pseudoknots)


@dataclass(frozen=True)
class Trajectory:
    """A folding trajectory ``s = s_0, ..., s_m`` stored as its start and moves."""

    initial: SecondaryStructure
    moves: tuple
    allow_pk: bool = False
    info: dict = field(default_factory=dict, compare=False)

    @property
    def distance(self) -> int:
        return len(self.moves)

    def _count(self, kind: str) -> int:
        return sum(1 for m in self.moves if m.kind == kind)

    @property
    def num_removals(self) -> int:
        return self._count(REMOVE)

    @property
    def num_additions(self) -> int:
        return self._count(ADD)

    @property
    def num_shifts(self) -> int:
        return self._count(SHIFT)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def structures(self) -> Iterator[SecondaryStructure]:
        """Yield ``s_0, ..., s_m``; raises :class:`IllegalMove` on the first invalid step."""
        s = self.initial
        pairs = set(s.pairs)
        partner = {}
        for i, j in pairs:
            partner[i], partner[j] = j, i
        allow = self.allow_pk or s.allow_pseudoknots
        yield s
        for m in self.moves:
            _apply_inplace(pairs, partner, m, s.theta, s.n, allow)
            yield SecondaryStructure(frozenset(pairs), s.n, s.theta, allow)

    def final(self) -> SecondaryStructure:
        last = self.initial
        for last in self.structures():
            pass
        return last

    def format_text(self, label: str = "s") -> str:
        """Numbered listing: step, dot-bracket, tab, move annotation."""
        width = max(2, len(str(len(self.moves))))
        lines = []
        for step, st in enumerate(self.structures()):
            note = label if step == 0 else self.moves[step - 1].annotation()
            lines.append(f"{step:>{width}}. {to_dot_bracket(st)}\t{note}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "initial": to_dot_bracket(self.initial),
            "n": self.initial.n,
            "moves": [_move_dict(m) for m in self.moves],
            "counts": {
                "removals": self.num_removals,
                "additions": self.num_additions,
                "shifts": self.num_shifts,
            },
            "distance": self.distance,
        }


def _move_dict(m: Move) -> dict:
    d = {"kind": m.kind, "pair": list(m.pair)}
    if m.kind == SHIFT:
        d["to"] = list(m.to_pair)
    return d


def move_from_dict(d: dict) -> Move:
    return Move(d["kind"], tuple(d["pair"]), tuple(d["to"]) if "to" in d else None)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_trajectory(s: SecondaryStructure, t: SecondaryStructure,
                      trajectory: Trajectory | Iterable[Move], allow_pk: bool = False) -> Verdict:
    """Replay ``trajectory`` from ``s``; truthy iff every step is legal and it ends at ``t``.

    The returned :class:`Verdict` carries the first failing step and reason.
    """
    moves = trajectory.moves if isinstance(trajectory, Trajectory) else tuple(trajectory)
    if s.n != t.n:
        return Verdict(False, 0, f"length mismatch {s.n} != {t.n}")
    pairs = set(s.pairs)
    partner = {}
    for i, j in pairs:
        partner[i], partner[j] = j, i
    for step, m in enumerate(moves, start=1):
        try:
            _apply_inplace(pairs, partner, m, s.theta, s.n, allow_pk)
        except IllegalMove as exc:
            return Verdict(False, step, str(exc))
    if pairs != set(t.pairs):
        return Verdict(False, len(moves), "final structure differs from target")
    return Verdict(True)


def bookkeeping_holds(traj: Trajectory, t: SecondaryStructure) -> bool:
    """Removals + additions + 2 * shifts equals the base pair distance."""
    return (traj.num_removals + traj.num_additions + 2 * traj.num_shifts
            == base_pair_distance(traj.initial, t))
