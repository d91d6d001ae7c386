"""Count characterizations checked by exhaustive enumeration with certificates.

All checks work on tables indexed by edge-subset bitmasks.  Incidence counts
come from ``kernels.union_popcount`` and partition minima from the subset
dynamic program ``kernels.partition_min``.  Certificates use size-then-
lexicographic order on edge index tuples, so the reported violating subset is
the smallest such subset in the order used by ``enumerate_subsets``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import CapExceeded, DuplicateNormals, NotBipartite, UnsupportedCase
from .phgraph import (PARTITION_CAP, SUBSET_CAP, EdgeSubset, PointHyperplaneGraph, components,
                      derive_point_loop_graph, enumerate_partitions, nu)


@dataclass(frozen=True)
class Certificate:
    kind: str
    subset: tuple
    lhs: int
    rhs: int
    partition: tuple | None = None

    def as_dict(self, g: PointHyperplaneGraph | None = None):
        out = {"kind": self.kind, "lhs": self.lhs, "rhs": self.rhs, "subset": list(self.subset)}
        if self.partition is not None:
            out["partition"] = [list(b) for b in self.partition]
        if g is not None:
            out["subset_edges"] = [_edge_names(g, k) for k in self.subset]
        return out


@dataclass(frozen=True)
class CountReport:
    theorem: str
    holds: bool
    certificate: Certificate | None = None
    stats: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def as_dict(self, g: PointHyperplaneGraph | None = None):
        return {"theorem": self.theorem, "holds": self.holds,
                "certificate": self.certificate.as_dict(g) if self.certificate else None,
                "stats": dict(self.stats), "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def _edge_names(g, k):
    e = g.edges[k]
    return [g.name(e.u), g.name(e.v)]


class _Tables:
    """Per-graph subset tables; point and line roles come from vertex sets."""

    def __init__(self, g: PointHyperplaneGraph, lines=None, cap: int = SUBSET_CAP):
        m = len(g.edges)
        if m > cap:
            raise CapExceeded(f"{m} edges exceeds the subset cap {cap}")
        self.g = g
        self.m = m
        self.n = 1 << m
        lines = set(g.line_vertices if lines is None else lines)
        self.lines = [v for v in g.vertices if v in lines]
        self.points = [v for v in g.vertices if v not in lines]
        self.vmasks = g.edge_vertex_masks()
        self.masks = np.arange(self.n, dtype=np.uint64)
        self.size = np.bitwise_count(self.masks).astype(np.int64)
        self.nuP = self.nu(self.points)
        self.nuL = self.nu(self.lines)

    def nu(self, vs):
        return kernels.union_popcount(self.vmasks, self.g.vertex_mask(vs))

    def kinds(self):
        """Edge kinds relative to the chosen line set: 0 PP, 1 PL, 2 LL."""
        ls = set(self.lines)
        eu, ev, kind = [], [], []
        for e in self.g.edges:
            a, b = self.g.position[e.u], self.g.position[e.v]
            ia, ib = e.u in ls, e.v in ls
            if ia and ib:
                kind.append(2)
            elif ia or ib:
                if ia:
                    a, b = b, a
                kind.append(1)
            else:
                kind.append(0)
            eu.append(a)
            ev.append(b)
        return eu, ev, kind

    def subset(self, mask) -> tuple:
        return tuple(k for k in range(self.m) if (int(mask) >> k) & 1)

    def full(self) -> int:
        return self.n - 1


def _shortlex_first(tab: _Tables, flags) -> int | None:
    flags = np.asarray(flags, dtype=bool).copy()
    flags[0] = False
    idx = np.nonzero(flags)[0]
    if idx.size == 0:
        return None
    sizes = tab.size[idx]
    k = sizes.min()
    cands = idx[sizes == k]
    return int(min(cands, key=lambda a: tab.subset(a)))


def _partition_of(choice, mask) -> tuple:
    parts = []
    a = int(mask)
    while a:
        b = int(choice[a])
        parts.append(b)
        a ^= b
    return parts


def _partition_tuple(tab, parts):
    return tuple(tab.subset(b) for b in parts)


def _size_check(theorem, tab, required):
    actual = tab.m
    if actual == required:
        return None
    if actual < required:
        cert = Certificate("too-few-edges", tuple(range(actual)), required, actual)
    else:
        cert = Certificate("too-many-edges", tuple(range(actual)), actual, required)
    return CountReport(theorem, False, cert, {"edges": actual, "required": required})


def _subset_check(theorem, tab, bound, stats=None, details=None):
    viol = tab.size > bound
    viol[0] = False
    first = _shortlex_first(tab, viol)
    stats = dict(stats or {})
    stats["subsets_checked"] = tab.n - 1
    stats["violating_subsets"] = int(viol.sum())
    if first is None:
        return CountReport(theorem, True, None, stats, details or {})
    cert = Certificate("subset", tab.subset(first), int(tab.size[first]), int(bound[first]))
    return CountReport(theorem, False, cert, stats, details or {})


# ---------------------------------------------------------------------------
# partition bounds


def min_partition_value(A: EdgeSubset, f, cap: int = PARTITION_CAP):
    """Brute-force minimum of sum f(block) over all set partitions of A.

    ``f`` receives an EdgeSubset.  Returns (value, partition) with the first
    minimizing partition in restricted-growth-string order.
    """
    memo = {}

    def val(block):
        if block not in memo:
            memo[block] = f(EdgeSubset(A.parent, frozenset(block)))
        return memo[block]

    best = None
    arg = None
    for part in enumerate_partitions(A, cap):
        s = sum(val(b) for b in part)
        if best is None or s < best:
            best, arg = s, part
    return best, arg


def collinear_block_value(A: EdgeSubset, X) -> int:
    """2 nu_{V-X}(A) + nu_X(A) - 2."""
    g = A.parent
    rest = [v for v in g.vertices if v not in set(X)]
    return 2 * nu(A, rest) + nu(A, X) - 2


def collinear_partition_value(g: PointHyperplaneGraph, X, partition) -> int:
    """Right-hand side of the collinear count for a given partition of A."""
    blocks = [EdgeSubset(g, frozenset(b)) for b in partition]
    union = EdgeSubset(g, frozenset(k for b in partition for k in b))
    return sum(collinear_block_value(b, X) for b in blocks) + nu(union, X) - 1


def check_collinear_realizability(g: PointHyperplaneGraph, X=(), max_edges: int = SUBSET_CAP,
                                  max_partition: int = PARTITION_CAP) -> CountReport:
    """Bar-joint realization with the vertices of X collinear.

    Holds iff some spanning E' with |E'| = 2|V| - 3 satisfies, for every
    nonempty A in E' and every partition of A,
    |A| <= sum(2 nu_{V-X}(A_i) + nu_X(A_i) - 2) + nu_X(A) - 1.
    """
    theorem = "collinear"
    m = len(g.edges)
    if m > max_partition:
        raise CapExceeded(f"{m} edges exceeds the partition cap {max_partition}")
    tab = _Tables(g, lines=X, cap=max_edges)
    nuX, nuR = tab.nuL, tab.nuP
    values = 2 * nuR + nuX - 2
    values[0] = 0
    best, choice = kernels.partition_min(values, tab.m)
    bound = best + nuX - 1
    bad = tab.size > bound
    bad[0] = False
    closed = kernels.superset_closure(bad, tab.m)
    need = 2 * len(g.vertices) - 3
    good = (~closed) & (tab.size == need)
    stats = {"subsets_checked": tab.n - 1, "bad_subsets": int(bad.sum()), "required_edges": need}
    w = _shortlex_first(tab, good) if need > 0 else None
    if need <= 0:
        return CountReport(theorem, True, None, stats, {"spanning_subset": []})
    if w is not None:
        return CountReport(theorem, True, None, stats, {"spanning_subset": list(tab.subset(w))})
    if m == need:
        a = _shortlex_first(tab, bad)
        parts = _partition_of(choice, a)
        cert = Certificate("partition", tab.subset(a), int(tab.size[a]), int(bound[a]),
                           _partition_tuple(tab, parts))
    elif m < need:
        cert = Certificate("too-few-edges", tuple(range(m)), need, m)
    else:
        indep = ~closed
        r = int(tab.size[indep].max())
        w = _shortlex_first(tab, indep & (tab.size == r))
        cert = Certificate("rank", tab.subset(w) if w else (), need, r)
    return CountReport(theorem, False, cert, stats)


def check_scene_count(g: PointHyperplaneGraph, d: int = 2, max_edges: int = SUBSET_CAP,
                      max_partition: int = PARTITION_CAP) -> CountReport:
    """Both count forms for bipartite graphs, reported side by side.

    (d): some E' with |E'| = d|V_P| + |V_L| - d and |A| <= d nu_P(A) + nu_L(A) - d
    for every nonempty A in E'.  (e): every partition of E has
    sum(d nu_P(A_i) + nu_L(A_i) - d) >= d|V_P| + |V_L| - d.
    """
    theorem = "scene"
    if not g.is_bipartite():
        raise NotBipartite("scene counts need every edge to join a point and a hyperplane")
    m = len(g.edges)
    if m > max_partition:
        raise CapExceeded(f"{m} edges exceeds the partition cap {max_partition}")
    tab = _Tables(g, cap=max_edges)
    need = d * len(g.point_vertices) + len(g.line_vertices) - d
    f = d * tab.nuP + tab.nuL - d
    f[0] = 0
    bad = tab.size > f
    bad[0] = False
    closed = kernels.superset_closure(bad, tab.m)
    indep = ~closed
    r = int(tab.size[indep].max())
    holds_d = need >= 0 and r >= need and bool((indep & (tab.size == need)).any())
    best, choice = kernels.partition_min(f, tab.m)
    total = int(best[tab.full()])
    holds_e = total >= need
    details = {"d": holds_d, "e": holds_e, "agree": holds_d == holds_e, "required_edges": need,
               "partition_minimum": total, "independent_rank": r}
    stats = {"subsets_checked": tab.n - 1}
    if holds_d:
        return CountReport(theorem, True, None, stats, details)
    w = _shortlex_first(tab, indep & (tab.size == r))
    cert = Certificate("rank", tab.subset(w) if w else (), need, r)
    details["e_certificate"] = {"partition": [list(b) for b in _partition_tuple(tab, _partition_of(choice, tab.full()))],
                                "value": total}
    return CountReport(theorem, False, cert, stats, details)


def check_fixed_normal_plane(g: PointHyperplaneGraph, max_edges: int = SUBSET_CAP) -> CountReport:
    """Minimal fixed-normal rigidity counts in the plane.

    |E| = 2|V_P| + |V_L| - 2, |F| <= 2 nu_P(F) - 3 when F avoids V_L, and
    |F| <= 2 nu_P(F) + nu_L(F) - 2 for every nonempty F.
    """
    theorem = "fixed-normal"
    required = 2 * len(g.point_vertices) + len(g.line_vertices) - 2
    m = len(g.edges)
    if m != required:
        return _size_check(theorem, _Counted(m), required)
    tab = _Tables(g, cap=max_edges)
    bound = np.where(tab.nuL == 0, 2 * tab.nuP - 3, 2 * tab.nuP + tab.nuL - 2)
    return _subset_check(theorem, tab, bound)


class _Counted:
    def __init__(self, m):
        self.m = m


def parallel_classes(normals: dict, order, tol: float | None = None) -> dict:
    """Class id per line; lines share a class iff their normals are parallel."""
    reps = []
    out = {}
    for v in order:
        a = normals[v]
        for k, b in enumerate(reps):
            cross = a[0] * b[1] - a[1] * b[0]
            if (cross == 0) if tol is None else (abs(float(cross)) <= tol):
                out[v] = k
                break
        else:
            out[v] = len(reps)
            reps.append(a)
    return out


def value_classes(values: dict, order) -> dict:
    reps = []
    out = {}
    for v in order:
        x = values[v]
        if x in reps:
            out[v] = reps.index(x)
        else:
            out[v] = len(reps)
            reps.append(x)
    return out


def _is_exact(vals):
    return all(isinstance(x, (int, Fraction)) for x in vals)


def _classes_for(g, normals, lines):
    flat = [x for v in lines for x in normals[v]]
    tol = None if _is_exact(flat) else 1e-9
    return parallel_classes(normals, lines, tol)


def check_fixed_line(g: PointHyperplaneGraph, normals: dict, max_edges: int = SUBSET_CAP) -> CountReport:
    """Minimal fixed-line rigidity: |E| = 2|V_P| and
    |F| <= 2 nu_P(F) - 3 + min(3, 2 a(F)) with a(F) the rank of the touched normals."""
    theorem = "fixed-line"
    required = 2 * len(g.point_vertices)
    if len(g.edges) != required:
        return _size_check(theorem, _Counted(len(g.edges)), required)
    tab = _Tables(g, cap=max_edges)
    cls = _classes_for(g, normals, tab.lines)
    cmasks = []
    for e in g.edges:
        cm = 0
        for v in e.ends:
            if v in cls:
                cm |= 1 << cls[v]
        cmasks.append(cm)
    a = np.minimum(2, kernels.union_popcount(cmasks, (1 << max(1, len(set(cls.values())))) - 1))
    bound = 2 * tab.nuP - 3 + np.minimum(3, 2 * a)
    return _subset_check(theorem, tab, bound)


def _need_two_lines(lines):
    if len(lines) < 2:
        raise UnsupportedCase("this count needs at least two line vertices")


def check_fixed_intercept(g: PointHyperplaneGraph, normals: dict, max_edges: int = SUBSET_CAP) -> CountReport:
    """Distinct-normal form: |E| = 2|V_P| + |V_L| - 1 and
    |F| <= 2 nu_P(F) + nu_L(F) - 3 + min(2, nu_L(F))."""
    theorem = "fixed-intercept"
    _need_two_lines(g.line_vertices)
    cls = _classes_for(g, normals, list(g.line_vertices))
    if len(set(cls.values())) != len(cls):
        raise DuplicateNormals("the distinct-normal count needs pairwise non-parallel normals")
    required = 2 * len(g.point_vertices) + len(g.line_vertices) - 1
    if len(g.edges) != required:
        return _size_check(theorem, _Counted(len(g.edges)), required)
    tab = _Tables(g, cap=max_edges)
    bound = 2 * tab.nuP + tab.nuL - 3 + np.minimum(2, tab.nuL)
    return _subset_check(theorem, tab, bound)


def _component_form(theorem, g, lines, cls_of, max_edges):
    _need_two_lines(lines)
    tab = _Tables(g, lines=lines, cap=max_edges)
    required = 2 * len(tab.points) + len(tab.lines) - 1
    if tab.m != required:
        return _size_check(theorem, tab, required)
    eu, ev, kind = tab.kinds()
    for k, (a, b, t) in enumerate(zip(eu, ev, kind)):
        if t == 2 and cls_of[g.vertices[a]] == cls_of[g.vertices[b]]:
            cert = Certificate("equal-line-data", (k,), 1, 0)
            return CountReport(theorem, False, cert, {"edges": tab.m})
    cls = [0] * len(g.vertices)
    for v, c in cls_of.items():
        cls[g.position[v]] = c
    corr = kernels.component_correction(tab.m, eu, ev, kind, cls)
    bound = 2 * tab.nuP + tab.nuL - 1 - corr
    return _subset_check(theorem, tab, bound)


def check_fixed_intercept_general(g: PointHyperplaneGraph, normals: dict,
                                  max_edges: int = SUBSET_CAP) -> CountReport:
    """Component-corrected form valid for arbitrary (even repeated) normals.

    |E| = 2|V_P| + |V_L| - 1; a_i and a_j not parallel on every LL edge; and
    |F| <= 2 nu_P(F) + nu_L(F) - 1 - sum_H (2 - dim<a_j : loops of H>) over
    the point components H of G[F].
    """
    lines = list(g.line_vertices)
    _need_two_lines(lines)
    return _component_form("fixed-intercept-general", g, lines, _classes_for(g, normals, lines), max_edges)


def check_slider(g: PointHyperplaneGraph, X, x_coords: dict, max_edges: int = SUBSET_CAP) -> CountReport:
    """Horizontal-slider form: sliders X play the role of V_L, abscissae that of normals."""
    lines = [v for v in g.vertices if v in set(X)]
    _need_two_lines(lines)
    return _component_form("slider", g, lines, value_classes(x_coords, lines), max_edges)


def point_component_correction(g: PointHyperplaneGraph, F: EdgeSubset, cls: dict) -> int:
    """Sum over components H of (G[F])^P of 2 - min(2, #line classes on H)."""
    lg = derive_point_loop_graph(g, F)
    touched = F.vertices()
    total = 0
    for comp in components(lg):
        if not set(comp) & touched:
            continue
        seen = {cls[label] for v, label in lg.loops if v in comp}
        total += 2 - min(2, len(seen))
    return total


def fixed_intercept_bound(g: PointHyperplaneGraph, normals: dict, F) -> dict:
    """Both right-hand sides for one edge set F, for inspection."""
    F = EdgeSubset(g, frozenset(F))
    cls = _classes_for(g, normals, list(g.line_vertices))
    corr = point_component_correction(g, F, cls)
    nP, nL = nu(F, g.point_vertices), nu(F, g.line_vertices)
    return {"size": len(F), "nu_P": nP, "nu_L": nL, "correction": corr,
            "general": 2 * nP + nL - 1 - corr, "distinct": 2 * nP + nL - 3 + min(2, nL)}
