import itertools
import random

import pytest
from hypothesis import given, strategies as st

from _support import nx_components, random_ph_graph
from phrigid.errors import CapExceeded, InvalidGraph
from phrigid.phgraph import (LL, PL, PP, EdgeSubset, LoopGraph, PointHyperplaneGraph, components,
                             derive_line_loop_graph, derive_point_loop_graph, enumerate_partitions,
                             enumerate_subsets, induced_subgraph, nu, set_partitions)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def test_edge_tags_and_orientation():
    g = PointHyperplaneGraph([0, 1], [2, 3], [(2, 0), (0, 1), (2, 3)])
    assert [e.tag for e in g.edges] == [PL, PP, LL]
    assert g.edges[0].u == 0 and g.edges[0].v == 2
    assert g.E_PL == [0] and g.E_PP == [1] and g.E_LL == [2]


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 9)]])
def test_invalid_graphs(edges):
    with pytest.raises(InvalidGraph):
        PointHyperplaneGraph([0, 1], [2], edges)


def test_overlapping_vertex_sets_rejected():
    with pytest.raises(InvalidGraph):
        PointHyperplaneGraph([0, 1], [1], [])


def test_nu_counts_marked_vertices():
    g = PointHyperplaneGraph([0, 1], [2], [(0, 1), (1, 2)])
    F = EdgeSubset(g, {1})
    assert nu(F, g.point_vertices) == 1 and nu(F, g.line_vertices) == 1


def test_point_loop_graph():
    g = PointHyperplaneGraph([0, 1], [2, 3], [(0, 1), (0, 2), (1, 3), (2, 3)])
    lg = derive_point_loop_graph(g)
    assert lg.vertices == (0, 1)
    assert lg.edges == ((0, 1),)
    assert sorted(lg.loops) == [(0, 2), (1, 3)]
    ll = derive_line_loop_graph(g)
    assert ll.vertices == (2, 3) and ll.edges == ((2, 3),)


@given(st.integers(0, 10**6))
def test_components_match_networkx(seed):
    rng = random.Random(seed)
    g = random_ph_graph(rng, rng.randint(1, 5), rng.randint(0, 4), rng.randint(0, 8))
    ours = [set(c) for c in components(g)]
    want = nx_components(g.vertices, [e.ends for e in g.edges])
    assert sorted(map(sorted, ours)) == sorted(map(sorted, want))


def test_enumerate_subsets_order_and_cap():
    g = PointHyperplaneGraph([0, 1, 2], [], [(0, 1), (1, 2), (0, 2)])
    got = [s.sorted() for s in enumerate_subsets(g)]
    assert got == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    big = PointHyperplaneGraph(range(7), [], list(itertools.combinations(range(7), 2)))
    with pytest.raises(CapExceeded):
        next(enumerate_subsets(big))


@pytest.mark.parametrize("n", range(9))
def test_set_partitions_bell_numbers(n):
    parts = list(set_partitions(range(n)))
    assert len(parts) == BELL[n]
    assert len({tuple(sorted(p)) for p in parts}) == BELL[n]
    for p in parts:
        assert sorted(x for b in p for x in b) == list(range(n))


def test_partition_cap():
    g = PointHyperplaneGraph(range(7), [], list(itertools.combinations(range(7), 2))[:13])
    with pytest.raises(CapExceeded):
        next(enumerate_partitions(EdgeSubset.full(g)))


def test_induced_subgraph_and_masks():
    g = PointHyperplaneGraph([0, 1, 2], [3], [(0, 1), (1, 3), (2, 3)])
    h = induced_subgraph(g, EdgeSubset(g, {1, 2}))
    assert set(h.vertices) == {1, 2, 3} and len(h.edges) == 2
    assert EdgeSubset.from_mask(g, 0b101).sorted() == (0, 2)
    assert EdgeSubset(g, {0, 2}).mask == 0b101


def test_loop_graph_validates():
    with pytest.raises(InvalidGraph):
        LoopGraph([0], [(0, 1)])
    lg = LoopGraph([0, 1], [(0, 1)], [(1, "x")])
    assert lg.items() == [("edge", (0, 1)), ("loop", (1, "x"))]


def test_graph_equality_and_relabel():
    g = PointHyperplaneGraph([0, 1], [2], [(0, 1), (1, 2)])
    same = PointHyperplaneGraph([0, 1], [2], [(1, 0), (2, 1)])
    assert g == same and hash(g) == hash(same)
    # edge order carries the edge indices used by certificates
    assert g != PointHyperplaneGraph([0, 1], [2], [(1, 2), (0, 1)])
    sl = g.relabel_lines([1])
    assert sl.point_vertices == (0, 2) and sl.line_vertices == (1,)
    assert [e.tag for e in sl.edges] == [PL, PL]
