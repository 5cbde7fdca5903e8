import itertools
from collections import Counter

import pytest
from hypothesis import given

from ms2dist.conflict_graph import (
    GENERAL, TripletNode, build_coarse_digraph, build_conflict_digraph, classify_edge,
    classify_node_type, detect_closed_2cycles, node_key, precedes,
)
from ms2dist.optimize import enumerate_simple_cycles, is_acyclic
from ms2dist.partition import equivalence_classes, partition_positions
from ms2dist.structures import SecondaryStructure, cross
from conftest import case_a, case_b
from strategies import bench_instances

T = TripletNode


def _cycles(g):
    return {frozenset(c) for c in enumerate_simple_cycles(g.nodes, g.edges, key=node_key).cycles}


def test_toy_pairs(toy_pairs):
    g = build_conflict_digraph(*toy_pairs)
    assert set(g.nodes) == {T(10, 5, 1), T(5, 10, 15), T(20, 15, 10), T(15, 20, 25)}
    # (10,5,1) cannot go first: its new pair (5,10) would share 10 with (10,15)
    assert g.edges == {(T(20, 15, 10), T(10, 5, 1)), (T(5, 10, 15), T(15, 20, 25))}


def test_bistable_graph(bistable):
    g = build_conflict_digraph(bistable.s, bistable.t)
    assert list(g.nodes) == [T(25, 6, 11), T(20, 11, 6), T(19, 12, 5), T(18, 13, 4)]
    assert g.edges == {
        (T(18, 13, 4), T(19, 12, 5)), (T(18, 13, 4), T(20, 11, 6)), (T(18, 13, 4), T(25, 6, 11)),
        (T(19, 12, 5), T(20, 11, 6)), (T(19, 12, 5), T(25, 6, 11)),
    }
    assert not _cycles(g)


def test_collosoma_graph_both_relations(collosoma):
    strict = build_conflict_digraph(collosoma.s, collosoma.t)
    general = build_conflict_digraph(collosoma.s, collosoma.t, relation=GENERAL)
    assert (len(strict), strict.num_edges, len(_cycles(strict))) == (12, 61, 0)
    assert (len(general), general.num_edges, len(_cycles(general))) == (12, 71, 5)
    # the extra edges only join nodes sharing two positions
    for a, b in general.edges - strict.edges:
        assert len(a.flatten() & b.flatten()) == 2


def test_toy20_graph(toy20):
    g = build_conflict_digraph(toy20.s, toy20.t)
    assert (len(g), g.num_edges) == (6, 10)
    assert _cycles(g) == {
        frozenset({T(8, 20, 10), T(9, 19, 11), T(18, 10, 20), T(19, 9, 1)}),
        frozenset({T(8, 20, 10), T(19, 9, 1)}),
        frozenset({T(18, 10, 20), T(9, 19, 11)}),
    }


def test_unknown_relation(toy_pairs):
    with pytest.raises(ValueError):
        build_conflict_digraph(*toy_pairs, relation="loose")


def test_locality_drops_long_shifts(toy_pairs, bistable):
    g = build_conflict_digraph(*toy_pairs, locality=9)
    assert set(g.nodes) == {T(10, 5, 1)} and not g.edges
    # every bistable shift moves its end 14 positions
    assert len(build_conflict_digraph(bistable.s, bistable.t, locality=13)) == 0
    assert len(build_conflict_digraph(bistable.s, bistable.t, locality=14)) == 4


@pytest.mark.parametrize("node,kind", [
    (T(1, 2, 3), 1), (T(3, 2, 1), 2), (T(3, 1, 2), 3), (T(2, 1, 3), 4), (T(2, 3, 1), 5), (T(1, 3, 2), 6),
])
def test_node_types(node, kind):
    assert classify_node_type(node) == kind


def test_edge_examples():
    assert classify_edge(T(4, 5, 2), T(3, 6, 1)) == ("forward", (5, 5))
    assert classify_edge(T(2, 5, 4), T(1, 6, 3)) == ("backward", (6, 6))


BIDIRECTIONAL = {(1, 5): 1, (2, 6): 1, (3, 1): 1, (3, 5): 1, (4, 2): 1, (4, 6): 1}
FORWARD = {
    (1, 1): 2, (1, 2): 1, (1, 3): 1, (1, 5): 1, (1, 6): 2, (2, 1): 1, (2, 5): 1, (2, 6): 1,
    (3, 1): 1, (3, 2): 1, (3, 3): 1, (3, 6): 1, (4, 1): 2, (4, 2): 1, (4, 3): 1, (4, 5): 1,
    (4, 6): 2, (5, 1): 1, (5, 5): 1, (5, 6): 1,
}
BACKWARD = {
    (1, 2): 1, (1, 5): 1, (1, 6): 1, (2, 1): 1, (2, 2): 2, (2, 4): 1, (2, 5): 2, (2, 6): 1,
    (3, 1): 1, (3, 2): 2, (3, 4): 1, (3, 5): 2, (3, 6): 1, (4, 1): 1, (4, 2): 1, (4, 4): 1,
    (4, 5): 1, (6, 2): 1, (6, 5): 1, (6, 6): 1,
}


def enumerate_six_position_edges() -> Counter:
    """Crossing relations between two nodes on six distinct positions, left pivot first."""
    seen = Counter()
    for x, y, z, u, v, w in itertools.permutations(range(1, 7)):
        if y > v:
            continue
        a, b = T(x, y, z), T(u, v, w)
        if cross(a.s_pair, b.s_pair) or cross(a.t_pair, b.t_pair):
            continue
        got = classify_edge(a, b)
        if got is not None and got[0] != "touch":
            seen[got] += 1
    return seen


def test_six_position_tables():
    seen = enumerate_six_position_edges()
    table = {kind: {k[1]: c for k, c in seen.items() if k[0] == kind}
             for kind in ("twoCycle", "forward", "backward")}
    assert table["twoCycle"] == BIDIRECTIONAL
    assert table["forward"] == FORWARD
    assert table["backward"] == BACKWARD
    assert [sum(table[k].values()) for k in ("twoCycle", "forward", "backward")] == [6, 24, 24]


def test_closed_two_cycles():
    (a,) = detect_closed_2cycles(*case_a())
    assert a.case == "A" and a.positions == (1, 6, 11, 16)
    assert a.nodes == (T(1, 6, 11), T(11, 16, 1), T(6, 1, 16), T(16, 11, 6))
    assert [classify_node_type(v) for v in a.nodes] == [1, 5, 4, 2]
    (b,) = detect_closed_2cycles(*case_b())
    assert b.case == "B"
    assert b.nodes == (T(1, 16, 11), T(16, 1, 6), T(6, 11, 16), T(11, 6, 1))
    assert [classify_node_type(v) for v in b.nodes] == [6, 3, 1, 2]


def test_closed_two_cycle_nodes_pairwise_overlap():
    s, t = case_a()
    g = build_conflict_digraph(s, t)
    assert len(g) == 4 and g.num_edges == 0
    for u, v in itertools.combinations(g.nodes, 2):
        assert len(u.flatten() & v.flatten()) == 2


def test_coarse_bistable_is_acyclic(bistable):
    s, t = bistable.s, bistable.t
    s = s.with_pairs(set(s.pairs) - partition_positions(s, t).BP1)
    classes = equivalence_classes(s, t)
    coarse = build_coarse_digraph(s, t, classes)
    assert coarse.edges
    assert is_acyclic(range(1, coarse.size + 1), coarse.successors)


def test_coarse_single_crossing():
    s = SecondaryStructure.from_pairs([(1, 10)], 20)
    t = SecondaryStructure.from_pairs([(5, 15)], 20)
    classes = equivalence_classes(s, t)
    coarse = build_coarse_digraph(s, t, classes)
    assert coarse.edges == [(1, 2)]
    assert coarse.crossing[(1, 2)] == {(1, 10)} and coarse.weight(1, 2) == 1


def test_dot_export(toy_pairs):
    dot = build_conflict_digraph(*toy_pairs).to_dot()
    assert dot.startswith("digraph G {") and '"(20,15,10)" -> "(10,5,1)";' in dot


@given(bench_instances())
def test_overlap_rules(pair):
    s, t = pair
    g = build_conflict_digraph(s, t)
    for a, b in itertools.combinations(g.nodes, 2):
        shared = len(a.flatten() & b.flatten())
        ab, ba = (a, b) in g.edges, (b, a) in g.edges
        if shared == 1:
            # the shared position is z of one node and x of the other
            assert ab or ba
        elif shared == 2:
            assert not ab and not ba
        assert ab == precedes(a, b) and ba == precedes(b, a)
