"""Random benchmark instances and batch measurement of the distance algorithms."""

from __future__ import annotations

import csv
import io
import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .optimize import DEFAULT_MAX_CYCLES, CycleCapExceeded
from .pkms2 import pk_ms2_trajectory
from .structures import CANONICAL_PAIRS, DEFAULT_THETA, RnaSequence, SecondaryStructure, StructureError
from .trajectory import ms2_branch_and_bound, ms2_exact, ms2_greedy, ms2_near_optimal

CSV_COLUMNS = ("id", "n", "method", "distance", "removals", "additions", "shifts",
               "nodes", "edges", "cycles", "truncated", "micros")
METHODS = ("exact", "near", "greedy", "bnb", "pk")


def gen_random_sequence(n: int, rng: random.Random) -> RnaSequence:
    if n < 1:
        raise ValueError("sequence length must be at least 1")
    return RnaSequence("".join(rng.choice("ACGU") for _ in range(n)))


def admissible_pairs(seq: RnaSequence, theta: int = DEFAULT_THETA) -> list[tuple[int, int]]:
    n = len(seq)
    return [(i, j) for i in range(1, n + 1) for j in range(i + theta + 1, n + 1)
            if seq[i] + seq[j] in CANONICAL_PAIRS]


def gen_random_structure(seq: RnaSequence, num_pairs: int, rng: random.Random,
                         theta: int = DEFAULT_THETA, max_restarts: int = 10_000) -> SecondaryStructure:
    """Draw pairs uniformly from the shrinking list of still-compatible pairs.

    Starts over whenever the list runs dry before ``num_pairs`` pairs are placed.
    """
    n = len(seq)
    if num_pairs < 0 or num_pairs > n // 2:
        raise ValueError(f"cannot place {num_pairs} pairs on {n} positions")
    base = admissible_pairs(seq, theta)
    if num_pairs and not base:
        raise StructureError("sequence admits no base pairs")
    for _ in range(max_restarts):
        live = list(base)
        chosen = []
        while len(chosen) < num_pairs and live:
            i, j = live[rng.randrange(len(live))]
            chosen.append((i, j))
            live = [(k, l) for (k, l) in live
                    if k not in (i, j) and l not in (i, j)
                    and not (i < k < j < l or k < i < l < j)]
        if len(chosen) == num_pairs:
            return SecondaryStructure(frozenset(chosen), n, theta)
    raise StructureError(f"no structure with {num_pairs} pairs found after {max_restarts} restarts")


@dataclass(frozen=True)
class BenchmarkConfig:
    start: int
    stop: int
    step: int = 10
    seqs_per_length: int = 25
    structs_per_seq: int = 20
    seed: int = 0
    max_cycles: int = DEFAULT_MAX_CYCLES
    methods: tuple = ("exact",)
    theta: int = DEFAULT_THETA
    timing: bool = False
    workers: int = 1
    pair_fraction: float = 0.2

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("length step must be positive")
        if self.start < 1 or self.stop < self.start:
            raise ValueError("need 1 <= start <= stop")
        bad = set(self.methods) - set(METHODS)
        if bad:
            raise ValueError(f"unknown method(s): {', '.join(sorted(bad))}")

    @property
    def lengths(self) -> list[int]:
        return list(range(self.start, self.stop + 1, self.step))

    def pairs_for(self, n: int) -> int:
        return int(n * self.pair_fraction)


@dataclass
class BenchmarkRecord:
    id: str
    n: int
    method: str
    distance: int = -1
    removals: int = 0
    additions: int = 0
    shifts: int = 0
    nodes: int = 0
    edges: int = 0
    cycles: int = 0
    truncated: bool = False
    micros: int = 0

    def row(self) -> list:
        return [self.id, self.n, self.method, self.distance, self.removals, self.additions,
                self.shifts, self.nodes, self.edges, self.cycles, int(self.truncated), self.micros]


_RUNNERS = {
    "exact": lambda s, t, cap: ms2_exact(s, t, max_cycles=cap),
    "near": lambda s, t, cap: ms2_near_optimal(s, t, max_cycles=cap),
    "greedy": lambda s, t, cap: ms2_greedy(s, t, max_cycles=cap),
    "bnb": lambda s, t, cap: ms2_branch_and_bound(s, t),
    "pk": lambda s, t, cap: pk_ms2_trajectory(s, t)[0],
}


@dataclass(frozen=True)
class _Task:
    n: int
    seq_index: int
    seed: int
    config: BenchmarkConfig = field(compare=False)


def _run_task(task: _Task) -> list[BenchmarkRecord]:
    """All records for one sequence: every pair of its structures, every method."""
    cfg = task.config
    rng = random.Random(task.seed)
    k = cfg.pairs_for(task.n)
    while True:
        # short sequences may not carry k pairs; draw another one
        seq = gen_random_sequence(task.n, rng)
        try:
            structs = [gen_random_structure(seq, k, rng, cfg.theta, max_restarts=1000)
                       for _ in range(cfg.structs_per_seq)]
        except StructureError:
            continue
        break
    out = []
    for a, b in itertools.combinations(range(len(structs)), 2):
        for method in cfg.methods:
            rec = BenchmarkRecord(f"n{task.n}-q{task.seq_index}-{a}-{b}", task.n, method)
            began = time.perf_counter_ns()
            try:
                traj = _RUNNERS[method](structs[a], structs[b], cfg.max_cycles)
            except CycleCapExceeded:
                rec.truncated = True
            else:
                rec.distance = traj.distance
                rec.removals = traj.num_removals
                rec.additions = traj.num_additions
                rec.shifts = traj.num_shifts
                rec.nodes = traj.info.get("nodes", 0)
                rec.edges = traj.info.get("edges", 0)
                rec.cycles = traj.info.get("cycles", 0)
            if cfg.timing:
                rec.micros = (time.perf_counter_ns() - began) // 1000
            out.append(rec)
    return out


def _tasks(cfg: BenchmarkConfig) -> list[_Task]:
    master = random.Random(cfg.seed)
    tasks = []
    for n in cfg.lengths:
        for q in range(cfg.seqs_per_length):
            tasks.append(_Task(n, q, master.getrandbits(64), cfg))
    return tasks


def run_benchmark(config: BenchmarkConfig) -> list[BenchmarkRecord]:
    """Records in a fixed instance order, whatever the worker count."""
    tasks = _tasks(config)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        chunks = [_run_task(task) for task in tasks]
    return [r for chunk in chunks for r in chunk]


def write_csv(records, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())


def records_to_csv(records) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
