from hypothesis import given

from ms2dist.moves import verify_trajectory
from ms2dist.partition import equivalence_classes, partition_positions
from ms2dist.pkms2 import (
    path_subroutine, pk_lower_bound, pk_ms2_distance, pk_ms2_trajectory, subroutine_length,
)
from ms2dist.structures import SecondaryStructure, base_pair_distance, hamming_distance
from strategies import bench_instances, small_pairs


def test_bistable(bistable):
    traj, d = pk_ms2_trajectory(bistable.s, bistable.t)
    assert d == 11 == traj.distance == pk_ms2_distance(bistable.s, bistable.t)
    assert verify_trajectory(bistable.s, bistable.t, traj, allow_pk=True)


def test_bistable_per_class_floor_sum(bistable):
    # per-class floors give 11 while the global floor of d_H / 2 is 12
    assert hamming_distance(bistable.s, bistable.t) // 2 == 12
    assert pk_ms2_distance(bistable.s, bistable.t) == 11


def test_type_2_subroutine(bistable):
    part = partition_positions(bistable.s, bistable.t)
    X = next(X for X in equivalence_classes(bistable.s, bistable.t, part.A | part.B0)
             if X.members == {4, 13, 18})
    (m,) = path_subroutine(X)
    assert m.kind == "shift" and m.pair == (4, 13) and m.to_pair == (13, 18)


def test_isolated_pair():
    s = SecondaryStructure.from_pairs([(1, 8)], 10)
    t = SecondaryStructure.from_pairs([], 10)
    (X,) = equivalence_classes(s, t)
    assert [m.kind for m in path_subroutine(X)] == ["remove"]


def test_cycle_subroutine():
    s = SecondaryStructure.from_pairs([(1, 15), (5, 10)], 15)
    t = SecondaryStructure.from_pairs([(1, 5), (10, 15)], 15)
    (X,) = equivalence_classes(s, t)
    assert [m.kind for m in path_subroutine(X)] == ["remove", "shift", "add"]
    assert pk_ms2_distance(s, t) == 3


def test_identical():
    s = SecondaryStructure.from_pairs([(1, 8)], 10)
    assert pk_ms2_trajectory(s, s)[1] == 0


def _check(s, t):
    traj, d = pk_ms2_trajectory(s, t)
    assert verify_trajectory(s, t, traj, allow_pk=True)
    assert d == traj.distance == pk_ms2_distance(s, t) == pk_lower_bound(s.pairs, t.pairs)
    classes = equivalence_classes(s, t)
    # every position of a class differs between s and t, so d_H on X is |X|
    assert d == sum(X.size // 2 for X in classes) + sum(X.path_type == 5 for X in classes)
    for X in classes:
        assert len(path_subroutine(X)) == subroutine_length(X)
    assert d <= base_pair_distance(s, t)


@given(small_pairs())
def test_pk_small(pair):
    _check(*pair)


@given(bench_instances())
def test_pk_random(pair):
    _check(*pair)
