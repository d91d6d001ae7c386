"""Scenes: points and hyperplanes meeting prescribed incidences.

Realizations with fixed normals are the solutions (x, t) of

    <x_i, a_j> + t_j = 0    for every edge ij,

with one offset t_j per hyperplane.  The solution space always contains
the trivial scenes x_i = t, t_j = -<t, a_j>, so its dimension is at least d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IncidenceError, NotBipartite
from .exactla import DEFAULT_TOL, LabeledMatrix, dot, is_exact_value, nullity, to_scalar
from .matrices import Configuration
from .phgraph import PointHyperplaneGraph


@dataclass(frozen=True)
class Scene:
    graph: PointHyperplaneGraph
    dim: int
    points: dict
    hyperplanes: dict

    def __post_init__(self):
        if not self.graph.is_bipartite():
            raise NotBipartite("a scene needs a bipartite point-hyperplane graph")
        bad = incidence_violations(self.graph, self.points, self.hyperplanes)
        if bad:
            raise IncidenceError(f"incidence fails on edges {bad}")

    def configuration(self) -> Configuration:
        return Configuration(self.dim, self.points, self.hyperplanes)


def incidence_violations(g: PointHyperplaneGraph, points: dict, hyperplanes: dict,
                         tol: float = DEFAULT_TOL) -> list:
    """Edges ij with <p_i, a_j> + r_j != 0 (exactly, or beyond ``tol`` for floats)."""
    bad = []
    for e in g.edges:
        p = points[e.u]
        a, r = hyperplanes[e.v]
        val = dot(p, a) + r
        exact = is_exact_value(val)
        if (exact and val != 0) or (not exact and abs(val) > tol):
            bad.append((e.u, e.v))
    return bad


def trivial_scene(g: PointHyperplaneGraph, normals: dict, t) -> Scene:
    """Every point at t; each hyperplane shifted through t."""
    t = tuple(to_scalar(x) for x in t)
    pts = {v: t for v in g.point_vertices}
    hps = {v: (tuple(to_scalar(x) for x in normals[v]), -dot(t, normals[v])) for v in g.line_vertices}
    return Scene(g, len(t), pts, hps)


def _dim_of(normals, d):
    if normals:
        nd = len(next(iter(normals.values())))
        if d is not None and nd != d:
            raise ValueError("normals do not match the stated dimension")
        return nd
    return 2 if d is None else d


def scene_matrix(g: PointHyperplaneGraph, normals: dict, d: int | None = None) -> LabeledMatrix:
    """One row per edge over the columns x (d per point) and t (one per hyperplane)."""
    if not g.is_bipartite():
        raise NotBipartite("scene systems need a bipartite point-hyperplane graph")
    d = _dim_of(normals, d)
    cols = [(v, "x", k) for v in g.point_vertices for k in range(d)] + [(v, "t", 0) for v in g.line_vertices]
    idx = {c: k for k, c in enumerate(cols)}
    rows = []
    for e in g.edges:
        row = [Fraction(0)] * len(cols)
        for k, x in enumerate(normals[e.v]):
            row[idx[(e.u, "x", k)]] = to_scalar(x)
        row[idx[(e.v, "t", 0)]] = Fraction(1)
        rows.append(row)
    return LabeledMatrix.build([("edge", e.u, e.v) for e in g.edges], cols, rows)


def realization_space_dim(g: PointHyperplaneGraph, normals: dict, d: int | None = None,
                          tol: float = DEFAULT_TOL) -> int:
    """Dimension of the space of scenes with the given normals."""
    m = scene_matrix(g, normals, d)
    if not m.rows:
        return len(m.cols)
    return nullity(m, tol)


def has_only_trivial_realizations(g: PointHyperplaneGraph, normals: dict, d: int = 2,
                                  tol: float = DEFAULT_TOL) -> bool:
    return realization_space_dim(g, normals, d, tol) == d
