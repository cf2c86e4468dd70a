from __future__ import annotations

from itertools import permutations
from math import factorial

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antiramsey.cycles import (
    ClassificationError,
    Configuration,
    Cycle,
    CycleError,
    canonical_rotation,
    check_configuration,
    classify_step,
    cl_components,
    construction_sequence,
    edge_intersection_graph,
    enumerate_cycles,
    group_cycles,
    matching_classes,
    paths_between,
    try_classify,
)
from antiramsey.graph import Graph, complete_bipartite, complete_graph, cycle_graph, graph_from_edges

from conftest import small_graphs


def naive_cycles(g: Graph, ell: int) -> set[tuple[int, ...]]:
    out = set()
    for perm in permutations(g.vertices(), ell):
        if all(g.has_edge(perm[i], perm[(i + 1) % ell]) for i in range(ell)):
            out.add(canonical_rotation(perm))
    return out


def test_canonical_rotation():
    assert canonical_rotation([3, 1, 4, 2]) == (1, 3, 2, 4)
    assert canonical_rotation([1, 4, 2, 3]) == (1, 3, 2, 4)
    assert Cycle((2, 0, 1)) == Cycle((0, 2, 1))


def test_cycle_rejects_bad_sequences():
    for bad in [(0, 1), (0, 1, 1)]:
        with pytest.raises(CycleError):
            Cycle(bad)


def test_labellings_are_all_rotations_and_reflections():
    c = Cycle((0, 1, 2, 3, 4))
    labs = c.labellings()
    assert len(set(labs)) == 10
    assert all(Cycle(lab) == c for lab in labs)


# frozen counts
@pytest.mark.parametrize(
    "g, ell, count",
    [
        (complete_bipartite(2, 4), 4, 6),
        (nx.petersen_graph(), 5, 12),
        (nx.petersen_graph(), 6, 10),
        (complete_graph(5), 5, 12),
        (cycle_graph(7), 7, 1),
        (cycle_graph(7), 6, 0),
    ],
)
def test_known_counts(backend, g, ell, count):
    if isinstance(g, nx.Graph):
        g = graph_from_edges(g.number_of_nodes(), g.edges())
    assert len(enumerate_cycles(g, ell)) == count


@pytest.mark.parametrize("n", range(4, 8))
def test_complete_graph_formula(backend, n):
    g = complete_graph(n)
    for ell in range(4, n + 1):
        expected = factorial(n) // (2 * ell * factorial(n - ell))
        assert len(enumerate_cycles(g, ell)) == expected


@settings(max_examples=80)
@given(small_graphs(max_n=8), st.integers(3, 6))
def test_matches_permutation_search(backend, g, ell):
    found = enumerate_cycles(g, ell)
    assert [c.vertices for c in found] == sorted(naive_cycles(g, ell))
    assert all(c.in_graph(g) for c in found)


def test_length_below_three_rejected():
    with pytest.raises(CycleError):
        enumerate_cycles(cycle_graph(4), 2)


def two_pentagons() -> Graph:
    # share the edge 0-1
    return graph_from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 7), (7, 0)])


def test_edge_intersection_and_groups():
    g = graph_from_edges(11, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5)])
    cycles = enumerate_cycles(g, 5)
    assert edge_intersection_graph(cycles).num_edges == 0
    assert len(group_cycles(cycles)) == 2
    cycles = enumerate_cycles(two_pentagons(), 5)
    assert edge_intersection_graph(cycles).num_edges == 1
    assert len(group_cycles(cycles)) == 1


def test_vertex_sharing_cycles_are_separate_components():
    # bowtie of two pentagons through vertex 0
    g = graph_from_edges(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 8), (8, 0)])
    assert len(cl_components(g, 5)) == 2


def test_classification_of_a2():
    g = two_pentagons()
    a, b = enumerate_cycles(g, 5)
    h = Graph(g.vertex_count, a.edge_set, frozenset(a.vertices))
    conf = classify_step(h, b, 5)
    assert conf.tag == "A2"
    assert check_configuration(h, conf)
    assert matching_classes(h, b, 5) == {"A2"}


def test_classification_of_a5_and_b():
    # pentagon 0..4 plus path 0-5-6-2 closes a pentagon 0 1 2 6 5 (A3)
    base = cycle_graph(5, 8)
    c = Cycle((0, 1, 2, 6, 5))
    h = Graph(8, base.edges, frozenset(range(5)))
    assert try_classify(h, c, 5).tag == "A3"
    # u1 u2 in H, u4 old, u3 and u5 new
    c = Cycle((0, 1, 5, 3, 6))
    conf = classify_step(h, c, 5)
    assert conf.tag == "B4"
    assert conf.klass == "B"


def test_classification_errors():
    h = cycle_graph(5, 8)
    with pytest.raises(CycleError):
        classify_step(h, Cycle((0, 1, 2, 3, 4)), 5)
    with pytest.raises(CycleError):
        classify_step(h, Cycle((5, 6, 7)), 5)
    with pytest.raises(CycleError):
        classify_step(h, Cycle((0, 1, 5, 6)), 5)


def test_unclassifiable_step_raises():
    # old edges 0-1 and 3-4 are not joined inside H, and four old vertices leave no B_j
    h = Graph(10, cycle_graph(6, 10).edges, frozenset(range(6)))
    c = Cycle((0, 1, 7, 3, 4))
    with pytest.raises(ClassificationError):
        classify_step(h, c, 5)


def test_construction_sequence_steps():
    g = two_pentagons()
    comp, = cl_components(g, 5)
    assert comp.start == comp.member_cycles[0]
    step, = comp.sequence
    assert (step.e_new, step.v_new, step.c_new) == (4, 3, 1)
    assert comp.to_json()["steps"][0]["config"]["config"] == "A2"
    with pytest.raises(CycleError):
        construction_sequence(comp.member_cycles, Cycle((0, 1, 2, 3, 5)))


def test_paths_between():
    g = cycle_graph(6)
    assert paths_between(g, 0, 3, 4) == [(0, 1, 2, 3), (0, 5, 4, 3)]
    assert paths_between(g, 0, 3, 3) == []


def test_configuration_json():
    conf = Configuration("A", 3, (0, 1, 2, 3, 4))
    assert conf.to_json() == {"config": "A3", "labelling": [0, 1, 2, 3, 4]}
