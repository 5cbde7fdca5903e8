"""RNA secondary structures: representation, dot-bracket I/O and distances.

Positions are 1-based throughout. A structure is a set of ordered pairs
``(i, j)`` with ``i < j``; the pairing-function view maps every position to
its partner (0 when unpaired).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

NUCLEOTIDES = frozenset("ACGU")
CANONICAL_PAIRS = frozenset({"GC", "CG", "AU", "UA", "GU", "UG"})
DEFAULT_THETA = 3

Pair = tuple[int, int]


class StructureError(ValueError):
    """Raised for malformed or invalid secondary structures."""


def ordered(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


def touch(p: Pair, q: Pair) -> bool:
    """True if the two pairs share exactly one position (a base triple)."""
    return len({p[0], p[1]} & {q[0], q[1]}) == 1


def cross(p: Pair, q: Pair) -> bool:
    """True if the two ordered pairs form a pseudoknot."""
    return p[0] < q[0] < p[1] < q[1] or q[0] < p[0] < q[1] < p[1]


@dataclass(frozen=True)
class RnaSequence:
    bases: str

    def __post_init__(self):
        if len(self.bases) < 1:
            raise StructureError("sequence must contain at least one nucleotide")
        bad = set(self.bases) - NUCLEOTIDES
        if bad:
            raise StructureError(f"invalid nucleotide(s): {''.join(sorted(bad))}")

    def __len__(self) -> int:
        return len(self.bases)

    def __getitem__(self, i: int) -> str:
        """1-based access."""
        if not 1 <= i <= len(self.bases):
            raise IndexError(i)
        return self.bases[i - 1]

    def __str__(self) -> str:
        return self.bases


@dataclass(frozen=True)
class PairingFunction:
    """Integer-valued view of a structure; ``pf[i]`` is the partner of ``i``."""

    values: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= len(self.values):
            raise IndexError(i)
        return self.values[i - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)


@dataclass(frozen=True)
class SecondaryStructure:
    """An immutable set of base pairs over positions ``1..n``.

    Validation enforces no base triples, the hairpin threshold ``j - i > theta``
    and, unless ``allow_pseudoknots`` is set, the absence of crossing pairs.
    """

    pairs: frozenset
    n: int
    theta: int = DEFAULT_THETA
    allow_pseudoknots: bool = False
    _partner: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pairs = frozenset(tuple(p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if self.n < 1:
            raise StructureError("structure length must be positive")
        if self.theta < 0:
            raise StructureError("theta must be nonnegative")
        partner: dict[int, int] = {}
        for i, j in pairs:
            if not (1 <= i < j <= self.n):
                raise StructureError(f"pair ({i},{j}) outside 1..{self.n} or not ordered")
            if j - i <= self.theta:
                raise StructureError(f"pair ({i},{j}) violates hairpin threshold theta={self.theta}")
            for x in (i, j):
                if x in partner:
                    raise StructureError(f"base triple at position {x}")
            partner[i] = j
            partner[j] = i
        if not self.allow_pseudoknots:
            bad = first_crossing(pairs)
            if bad is not None:
                raise StructureError(f"pairs {bad[0]} and {bad[1]} cross (pseudoknot)")
        object.__setattr__(self, "_partner", partner)

    @classmethod
    def from_pairs(cls, pairs: Iterable, n: int, theta: int = DEFAULT_THETA,
                   allow_pseudoknots: bool = False) -> "SecondaryStructure":
        return cls(frozenset(ordered(*p) for p in pairs), n, theta, allow_pseudoknots)

    def __iter__(self) -> Iterator[Pair]:
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def partner(self, i: int) -> int:
        """Partner of position ``i``, 0 when unpaired."""
        return self._partner.get(i, 0)

    def pairing(self) -> PairingFunction:
        return pairing_function(self)

    def with_pairs(self, pairs: Iterable) -> "SecondaryStructure":
        return SecondaryStructure(frozenset(pairs), self.n, self.theta, self.allow_pseudoknots)

    def check_sequence(self, seq: RnaSequence) -> None:
        """Raise unless every pair is Watson-Crick or wobble on ``seq``."""
        if len(seq) != self.n:
            raise StructureError(f"sequence length {len(seq)} != structure length {self.n}")
        for i, j in self:
            if seq[i] + seq[j] not in CANONICAL_PAIRS:
                raise StructureError(f"pair ({i},{j}) is {seq[i]}-{seq[j]}, not canonical")

    def __str__(self) -> str:
        try:
            return to_dot_bracket(self)
        except StructureError:
            return repr(sorted(self.pairs))


def first_crossing(pairs: Iterable[Pair]):
    """Return one crossing couple of pairs, or None."""
    ps = sorted(pairs)
    for a in range(len(ps)):
        i, j = ps[a]
        for b in range(a + 1, len(ps)):
            k, l = ps[b]
            if k >= j:
                break
            if l > j:
                return ps[a], ps[b]
    return None


_OPEN = {"(": ")", "[": "]"}
_CLOSE = {")": "(", "]": "["}


def parse_dot_bracket(text: str, theta: int = DEFAULT_THETA,
                      allow_pk: bool = False) -> SecondaryStructure:
    """Parse dot-bracket notation; square brackets are accepted when ``allow_pk``."""
    text = text.strip()
    stacks: dict[str, list[int]] = {"(": [], "[": []}
    pairs = []
    for pos, ch in enumerate(text, start=1):
        if ch == ".":
            continue
        if ch in _OPEN:
            if ch == "[" and not allow_pk:
                raise StructureError(f"'[' at position {pos} requires pseudoknots to be allowed")
            stacks[ch].append(pos)
        elif ch in _CLOSE:
            opener = _CLOSE[ch]
            if opener == "[" and not allow_pk:
                raise StructureError(f"']' at position {pos} requires pseudoknots to be allowed")
            if not stacks[opener]:
                raise StructureError(f"unbalanced '{ch}' at position {pos}")
            pairs.append((stacks[opener].pop(), pos))
        else:
            raise StructureError(f"invalid character {ch!r} at position {pos}")
    for opener, stack in stacks.items():
        if stack:
            raise StructureError(f"unbalanced '{opener}' at position {stack[-1]}")
    if not text:
        raise StructureError("empty dot-bracket string")
    return SecondaryStructure(frozenset(pairs), len(text), theta, allow_pk)


def to_dot_bracket(s: SecondaryStructure) -> str:
    """Serialize ``s``; one layer of crossing pairs is written with brackets."""
    chars = ["."] * s.n
    layer1: list[Pair] = []
    layer2: list[Pair] = []
    for p in sorted(s.pairs):
        if not any(cross(p, q) for q in layer1):
            layer1.append(p)
        elif not any(cross(p, q) for q in layer2):
            layer2.append(p)
        else:
            raise StructureError("crossing nesting deeper than two layers is unsupported")
    for (i, j) in layer1:
        chars[i - 1], chars[j - 1] = "(", ")"
    for (i, j) in layer2:
        chars[i - 1], chars[j - 1] = "[", "]"
    return "".join(chars)


def pairing_function(s: SecondaryStructure) -> PairingFunction:
    values = [0] * s.n
    for i, j in s.pairs:
        values[i - 1] = j
        values[j - 1] = i
    return PairingFunction(tuple(values))


def _same_length(s: SecondaryStructure, t: SecondaryStructure) -> None:
    if s.n != t.n:
        raise StructureError(f"structure lengths differ: {s.n} != {t.n}")


def base_pair_distance(s: SecondaryStructure, t: SecondaryStructure) -> int:
    _same_length(s, t)
    return len(s.pairs ^ t.pairs)


def hamming_distance(s: SecondaryStructure, t: SecondaryStructure) -> int:
    _same_length(s, t)
    ps, pt = pairing_function(s), pairing_function(t)
    return sum(1 for a, b in zip(ps, pt) if a != b)


@dataclass(frozen=True)
class StructurePair:
    """Contents of a structure-pair input file."""

    s: SecondaryStructure
    t: SecondaryStructure
    sequence: RnaSequence | None = None
    header: str | None = None


def read_structure_pair(text: str, theta: int = DEFAULT_THETA,
                        allow_pk: bool = False) -> StructurePair:
    """Parse the four-line input format: optional '>' header, sequence (or '-'), s, t."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    header = None
    if lines and lines[0].startswith(">"):
        header = lines[0][1:].strip()
        lines = lines[1:]
    if len(lines) != 3:
        raise StructureError(f"expected sequence and two structures, got {len(lines)} content lines")
    seq_line, s_line, t_line = lines
    if not (len(seq_line) == len(s_line) == len(t_line)) and seq_line != "-":
        raise StructureError("sequence and structure lines differ in length")
    if len(s_line) != len(t_line):
        raise StructureError("structure lines differ in length")
    seq = None if seq_line == "-" else RnaSequence(seq_line.upper().replace("T", "U"))
    s = parse_dot_bracket(s_line, theta, allow_pk)
    t = parse_dot_bracket(t_line, theta, allow_pk)
    return StructurePair(s, t, seq, header)
