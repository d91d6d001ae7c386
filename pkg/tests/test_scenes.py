import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from _support import random_config, random_normals, random_ph_graph, sympy_rank
from phrigid.counts import check_scene_count
from phrigid.errors import IncidenceError, NotBipartite
from phrigid.exactla import random_fraction
from phrigid.matrices import fixed_normal_matrix
from phrigid.phgraph import PointHyperplaneGraph
from phrigid.scenes import (Scene, has_only_trivial_realizations, incidence_violations, realization_space_dim,
                            scene_matrix, trivial_scene)

seeds = st.integers(0, 10**9)


def bipartite(rng, p=None, l=None, m=None):
    p = p or rng.randint(1, 4)
    l = l or rng.randint(1, 4)
    m = rng.randint(0, p * l) if m is None else m
    return random_ph_graph(rng, p, l, m, ll=False, pp=False)


def test_trivial_scene_at_origin():
    g = PointHyperplaneGraph([0, 1], [2], [(0, 2), (1, 2)])
    s = trivial_scene(g, {2: (Q(3, 5), Q(4, 5))}, (0, 0))
    assert all(p == (0, 0) for p in s.points.values())
    assert all(r == 0 for _, r in s.hyperplanes.values())


@given(seeds)
def test_trivial_scenes_satisfy_incidence(seed):
    rng = random.Random(seed)
    g = bipartite(rng)
    normals = random_normals(rng, g.line_vertices)
    t = (random_fraction(rng), random_fraction(rng))
    s = trivial_scene(g, normals, t)
    assert incidence_violations(g, s.points, s.hyperplanes) == []


def test_incidence_is_enforced():
    g = PointHyperplaneGraph([0], [1], [(0, 1)])
    with pytest.raises(IncidenceError):
        Scene(g, 2, {0: (1, 1)}, {1: ((1, 0), 0)})
    Scene(g, 2, {0: (0, 1)}, {1: ((1, 0), 0)})


def test_small_dimensions():
    g = PointHyperplaneGraph([0, 1], [2], [])
    assert realization_space_dim(g, {2: (1, 0)}) == 2 * 2 + 1
    g = PointHyperplaneGraph([0], [1], [(0, 1)])
    assert realization_space_dim(g, {1: (1, 0)}) == 2
    assert has_only_trivial_realizations(g, {1: (1, 0)})


def test_non_bipartite_rejected():
    g = PointHyperplaneGraph([0, 1], [2], [(0, 1)])
    with pytest.raises(NotBipartite):
        realization_space_dim(g, {2: (1, 0)})


@given(seeds)
def test_dimension_at_least_d(seed):
    rng = random.Random(seed)
    g = bipartite(rng)
    assert realization_space_dim(g, random_normals(rng, g.line_vertices)) >= 2


@given(seeds)
def test_scene_system_matches_fixed_normal_on_any_placement(seed):
    rng = random.Random(seed)
    g = bipartite(rng)
    c = random_config(rng, g)
    normals = {v: a for v, (a, _) in c.hyperplanes.items()}
    dim = realization_space_dim(g, normals)
    assert dim == fixed_normal_matrix(g, c).nullity()
    assert dim == len(scene_matrix(g, normals).cols) - sympy_rank(scene_matrix(g, normals).entries)


@settings(max_examples=40)
@given(seeds)
def test_counts_predict_trivial_realizations(seed):
    rng = random.Random(seed)
    p, l = rng.randint(1, 3), rng.randint(1, 3)
    g = bipartite(rng, p, l, min(p * l, 2 * p + l - 2 + rng.randint(0, 1)))
    rep = check_scene_count(g)
    draws = [has_only_trivial_realizations(g, random_normals(rng, g.line_vertices)) for _ in range(2)]
    assert draws[0] == draws[1] == rep.holds
