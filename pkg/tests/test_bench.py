import csv
import io
import random
from collections import Counter

import pytest

from ms2dist.bench import (
    CSV_COLUMNS, BenchmarkConfig, admissible_pairs, gen_random_sequence, gen_random_structure,
    records_to_csv, run_benchmark,
)
from ms2dist.structures import CANONICAL_PAIRS, RnaSequence


def test_sequence_is_seeded():
    a = gen_random_sequence(40, random.Random(3))
    b = gen_random_sequence(40, random.Random(3))
    assert str(a) == str(b) and len(a) == 40 and set(str(a)) <= set("ACGU")
    with pytest.raises(ValueError):
        gen_random_sequence(0, random.Random(0))


def test_nucleotide_frequencies_are_uniform():
    counts = Counter(str(gen_random_sequence(40_000, random.Random(1))))
    assert all(abs(c / 40_000 - 0.25) < 0.01 for c in counts.values())


def test_admissible_pairs_respect_pairing_rules():
    seq = RnaSequence("GGGAAAUCCC")
    pairs = admissible_pairs(seq)
    assert (1, 10) in pairs and (1, 4) not in pairs
    for i, j in pairs:
        assert j - i > 3 and seq[i] + seq[j] in CANONICAL_PAIRS


@pytest.mark.parametrize("n", [10, 20, 50])
def test_structures_have_requested_size(n):
    rng = random.Random(n)
    seq = gen_random_sequence(n, rng)
    for _ in range(20):
        s = gen_random_structure(seq, n // 5, rng)
        assert len(s) == n // 5
        s.check_sequence(seq)


def test_impossible_structure():
    with pytest.raises(ValueError):
        gen_random_structure(RnaSequence("AAAAAAAA"), 1, random.Random(0))
    with pytest.raises(ValueError):
        gen_random_structure(RnaSequence("GGGGCCCC"), 5, random.Random(0))


def test_bad_config():
    with pytest.raises(ValueError):
        BenchmarkConfig(10, 20, 0)
    with pytest.raises(ValueError):
        BenchmarkConfig(30, 20)
    with pytest.raises(ValueError):
        BenchmarkConfig(10, 20, methods=("exact", "fast"))


SMALL = BenchmarkConfig(10, 20, 10, seqs_per_length=2, structs_per_seq=4, seed=7,
                        methods=("exact", "near", "greedy", "bnb", "pk"))


def test_record_counts_and_columns():
    records = run_benchmark(SMALL)
    assert len(records) == 2 * 2 * 6 * 5
    rows = list(csv.reader(io.StringIO(records_to_csv(records))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert {r[2] for r in rows[1:]} == set(SMALL.methods)
    assert all(r[-1] == "0" for r in rows[1:])


def test_methods_ordered_per_instance():
    by_id = {}
    for r in run_benchmark(SMALL):
        by_id.setdefault(r.id, {})[r.method] = r.distance
    for d in by_id.values():
        assert d["pk"] <= d["exact"] == d["bnb"] <= min(d["near"], d["greedy"])


def test_reproducible_across_worker_counts():
    one = records_to_csv(run_benchmark(SMALL))
    assert one == records_to_csv(run_benchmark(SMALL))
    two = BenchmarkConfig(**{**SMALL.__dict__, "workers": 2})
    assert one == records_to_csv(run_benchmark(two))


def test_seed_changes_output():
    other = BenchmarkConfig(**{**SMALL.__dict__, "seed": 8})
    assert records_to_csv(run_benchmark(SMALL)) != records_to_csv(run_benchmark(other))


def test_cycle_cap_marks_truncated():
    cfg = BenchmarkConfig(40, 40, 10, seqs_per_length=3, structs_per_seq=6, seed=2, max_cycles=0)
    records = run_benchmark(cfg)
    flagged = [r for r in records if r.truncated]
    assert all(r.distance == -1 for r in flagged)
    assert all(r.cycles == 0 for r in records if not r.truncated)


def test_timing_fills_micros():
    cfg = BenchmarkConfig(10, 10, 10, seqs_per_length=1, structs_per_seq=3, timing=True)
    assert any(r.micros > 0 for r in run_benchmark(cfg))
