import random

import pytest
from hypothesis import given, settings, strategies as st

from _support import random_ph_graph
from phrigid import gallery as gl
from phrigid.constructions import (add_normal_tree, mixed_augment, mixed_constraint_matrix, pin_rotation_row,
                                   random_fixed_normal_placement, random_mixed_placement)
from phrigid.counts import check_collinear_realizability, check_fixed_normal_plane
from phrigid.errors import NotATree, OverlappingClasses, UnsupportedCase
from phrigid.matrices import euclidean_ph_matrix, fixed_normal_matrix
from phrigid.phgraph import LL, PointHyperplaneGraph

seeds = st.integers(0, 10**9)


def test_tree_sizes():
    g = PointHyperplaneGraph([0], [1], [(0, 1)])
    assert add_normal_tree(g) == g
    g = PointHyperplaneGraph([0], [1, 2, 3], [(0, 1), (0, 2), (0, 3)])
    gt = add_normal_tree(g)
    assert len(gt.edges) == len(g.edges) + 2
    assert [e.tag for e in gt.edges[-2:]] == [LL, LL]


@pytest.mark.parametrize("tree", [[(1, 2)], [(1, 2), (2, 1)], [(1, 2), (1, 0)], [(1, 2), (3, 3)]])
def test_bad_trees(tree):
    g = PointHyperplaneGraph([0], [1, 2, 3], [(0, 1)])
    with pytest.raises(NotATree):
        add_normal_tree(g, tree)


def test_triangle_tree_collinear_count():
    g = gl.fixed_normal_triangle()
    gt = add_normal_tree(g)
    assert len(gt.edges) == 8
    rep = check_collinear_realizability(gt, gt.line_vertices)
    # 2|V| - 3 = 9 edges are needed, so the augmented graph stays flexible
    assert not rep.holds and rep.certificate.kind == "too-few-edges"


def test_pinning_drops_rotation_once():
    g, c = gl.fixed_normal_triangle_config()
    gt = add_normal_tree(g)
    m = euclidean_ph_matrix(gt, c)
    pinned = pin_rotation_row(m, c, g.line_vertices[0])
    assert pinned.nullity() == m.nullity() - 1 == fixed_normal_matrix(g, c).nullity()
    again = pin_rotation_row(pinned, c, g.line_vertices[0])
    assert again.shape[0] == pinned.shape[0] + 1 and again.rank() == pinned.rank()


@settings(max_examples=30)
@given(seeds)
def test_fixed_normal_bridge(seed):
    rng = random.Random(seed)
    p, l = rng.randint(1, 3), rng.randint(1, 3)
    g = random_ph_graph(rng, p, l, 2 * p + l - 2 + rng.randint(-1, 1), ll=False)
    c = random_fixed_normal_placement(g, rng)
    gt = add_normal_tree(g)
    pinned = pin_rotation_row(euclidean_ph_matrix(gt, c), c, g.line_vertices[0])
    assert pinned.nullity() == fixed_normal_matrix(g, c).nullity()


def test_mixed_example_shape():
    g, spec = gl.mixed_constraint_example()
    aug = mixed_augment(g, **spec)
    assert len(aug.k_points) == 2
    assert len(aug.graph.line_vertices) == len(g.line_vertices) + 1
    assert len(aug.connection_edges) == 2 + (3 + 2) + 2 * 1
    assert set(aug.centre_vertex.values()) == set(aug.k_points)


def test_mixed_bridge_on_example():
    g, spec = gl.mixed_constraint_example()
    aug = mixed_augment(g, **spec)
    for seed in range(3):
        c, cp, centres = random_mixed_placement(g, aug, random.Random(seed))
        constrained = mixed_constraint_matrix(g, c, centres=centres, **spec).nullity()
        assert euclidean_ph_matrix(aug.graph, cp).nullity() == 3 + constrained


def test_mixed_bridge_rigid_instance():
    # extra incidences make the constrained example rigid; the augmented graph follows
    g, spec = gl.mixed_constraint_example()
    ids = {g.name(v): v for v in g.vertices}
    extra = [(ids["w2"], ids["v4"]), (ids["w3"], ids["v8"])]
    g2 = g.with_edges(extra)
    aug = mixed_augment(g2, **spec)
    c, cp, centres = random_mixed_placement(g2, aug, random.Random(1))
    constrained = mixed_constraint_matrix(g2, c, centres=centres, **spec).nullity()
    full = euclidean_ph_matrix(aug.graph, cp).nullity()
    assert constrained == 0 and full == 3


@settings(max_examples=25)
@given(seeds)
def test_mixed_bridge_random(seed):
    rng = random.Random(seed)
    g = random_ph_graph(rng, rng.randint(1, 3), rng.randint(2, 4), rng.randint(2, 9), ll=False)
    lines = list(g.line_vertices)
    rng.shuffle(lines)
    fixed = lines[:1]
    rest = lines[1:]
    classes = [rest[:1]] if rest else []
    normal = rest[1:2]
    if len(fixed) + len(classes) + len(normal) < 2:
        return
    spec = {"fixed": fixed, "fixed_normal": normal, "rotation_classes": classes}
    aug = mixed_augment(g, **spec)
    c, cp, centres = random_mixed_placement(g, aug, rng)
    constrained = mixed_constraint_matrix(g, c, centres=centres, **spec).nullity()
    assert euclidean_ph_matrix(aug.graph, cp).nullity() == 3 + constrained


def test_mixed_errors():
    g, spec = gl.mixed_constraint_example()
    with pytest.raises(UnsupportedCase):
        mixed_augment(g)
    with pytest.raises(UnsupportedCase):
        mixed_augment(g, rotation_classes=[spec["rotation_classes"][0]])
    with pytest.raises(OverlappingClasses):
        mixed_augment(g, fixed=spec["fixed"], fixed_normal=spec["fixed"])
    with pytest.raises(OverlappingClasses):
        mixed_augment(g, fixed=[g.point_vertices[0]], fixed_normal=spec["fixed_normal"])


def test_k_block_is_minimally_rigid():
    g, spec = gl.mixed_constraint_example()
    aug = mixed_augment(g, **spec)
    from phrigid.phgraph import EdgeSubset, induced_subgraph
    k = set(aug.k_points) | {aug.k_line}
    F = EdgeSubset(aug.graph, frozenset(i for i, e in enumerate(aug.graph.edges) if set(e.ends) <= k))
    kg = induced_subgraph(aug.graph, F)
    assert len(kg.edges) == 2 * len(aug.k_points) - 1
    c, cp, _ = random_mixed_placement(g, aug, random.Random(0))
    assert euclidean_ph_matrix(kg, cp).nullity() == 3
    assert check_fixed_normal_plane is not None
