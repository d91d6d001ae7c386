"""Subspace families over loop graphs, their rank formulas, and the
hyperplane-intersection experiment behind fixed-intercept realizations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .counts import check_fixed_intercept_general
from .errors import CountsFail, MissingLoopVector, NoTransversalHyperplane, RetryBudgetExhausted
from .exactla import dot, rank
from .matrices import Configuration, perp, reduced_intercept_matrix
from .phgraph import LL, PL, PP, LoopGraph, PointHyperplaneGraph, components

S_DEN = 10**4
DILWORTH_CAP = 10
RETRY_BUDGET = 50


@dataclass(frozen=True)
class SubspaceFamily:
    """One list of spanning vectors per element, all in a common ambient space."""

    ambient: int
    bases: tuple
    labels: tuple
    coords: tuple = ()

    def __len__(self):
        return len(self.bases)


def _loop_vector(label, loop_vectors):
    if loop_vectors is None:
        if isinstance(label, (tuple, list)):
            return tuple(Fraction(x) for x in label)
        raise MissingLoopVector(f"loop label {label!r} carries no vector")
    if label not in loop_vectors:
        raise MissingLoopVector(f"no vector for loop label {label!r}")
    return tuple(Fraction(x) for x in loop_vectors[label])


def _unit(n, k):
    v = [Fraction(0)] * n
    v[k] = Fraction(1)
    return v


def build_family(kind: str, lg, d: int = 2, loop_vectors: dict | None = None) -> SubspaceFamily:
    """Families A (cycle-type), B (loops span their vectors), C (bicircular) and U.

    Kinds ``"A"``, ``"B"`` and ``"C"`` take a LoopGraph.  Kind ``"U"`` takes a
    planar PointHyperplaneGraph and a map from line vertices to normals and
    builds the point-part plus line-part family in (R^2)^{V_P} + R^{V_L}.
    """
    if kind == "U":
        return intercept_family(lg, loop_vectors)
    if not isinstance(lg, LoopGraph):
        raise TypeError("kinds A, B and C need a LoopGraph")
    pos = {v: k for k, v in enumerate(lg.vertices)}
    bases, labels = [], []
    if kind in ("A", "B"):
        n = d * len(lg.vertices)
        coords = tuple((v, t) for v in lg.vertices for t in range(d))
        for a, b in lg.edges:
            vecs = []
            for t in range(d):
                x = [Fraction(0)] * n
                x[d * pos[a] + t] += 1
                x[d * pos[b] + t] -= 1
                vecs.append(x)
            bases.append(vecs)
            labels.append(("edge", a, b))
        for v, label in lg.loops:
            if kind == "A":
                vecs = [_unit(n, d * pos[v] + t) for t in range(d)]
            else:
                a = _loop_vector(label, loop_vectors)
                if len(a) != d:
                    raise ValueError(f"loop vector {a} is not {d}-dimensional")
                x = [Fraction(0)] * n
                for t in range(d):
                    x[d * pos[v] + t] = a[t]
                vecs = [x]
            bases.append(vecs)
            labels.append(("loop", v, label))
    elif kind == "C":
        n = len(lg.vertices)
        coords = tuple((v, 0) for v in lg.vertices)
        for a, b in lg.edges:
            bases.append([_unit(n, pos[a]), _unit(n, pos[b])])
            labels.append(("edge", a, b))
        for v, label in lg.loops:
            bases.append([_unit(n, pos[v])])
            labels.append(("loop", v, label))
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    return SubspaceFamily(n, tuple(tuple(tuple(x) for x in vs) for vs in bases), tuple(labels), coords)


def intercept_family(g: PointHyperplaneGraph, normals: dict) -> SubspaceFamily:
    """U_e for each edge of a planar point-line graph."""
    if normals is None:
        raise MissingLoopVector("the intercept family needs line normals")
    coords = [(v, t) for v in g.point_vertices for t in range(2)] + [(v, 0) for v in g.line_vertices]
    idx = {c: k for k, c in enumerate(coords)}
    n = len(coords)
    bases = []
    for e in g.edges:
        vecs = []
        if e.tag == PP:
            for t in range(2):
                x = [Fraction(0)] * n
                x[idx[(e.u, t)]] += 1
                x[idx[(e.v, t)]] -= 1
                vecs.append(x)
        elif e.tag == PL:
            if e.v not in normals:
                raise MissingLoopVector(f"no normal for line {e.v!r}")
            a = normals[e.v]
            x = [Fraction(0)] * n
            x[idx[(e.u, 0)]], x[idx[(e.u, 1)]] = Fraction(a[0]), Fraction(a[1])
            vecs = [x, _unit(n, idx[(e.v, 0)])]
        else:
            vecs = [_unit(n, idx[(e.u, 0)]), _unit(n, idx[(e.v, 0)])]
        bases.append(vecs)
    labels = tuple(("edge", e.u, e.v) for e in g.edges)
    return SubspaceFamily(n, tuple(tuple(tuple(x) for x in vs) for vs in bases), labels, tuple(coords))


def family_span_dim(f: SubspaceFamily, subset=None) -> int:
    idx = range(len(f.bases)) if subset is None else subset
    rows = [list(x) for k in idx for x in f.bases[k]]
    if not rows:
        return 0
    return rank(rows)


def _vector_rank(vs):
    vs = [list(v) for v in vs]
    return rank(vs) if vs else 0


def predicted_rank(kind: str, lg, d: int = 2, loop_vectors: dict | None = None) -> int:
    """Closed-form span dimension for the families built by ``build_family``."""
    if kind == "U":
        return predicted_intercept_rank(lg, loop_vectors)
    comps = components(lg)
    if kind == "A":
        loopy = {v for v, _ in lg.loops}
        lam = sum(1 for c in comps if not loopy & set(c))
        return d * len(lg.vertices) - d * lam
    if kind == "B":
        total = d * len(lg.vertices)
        for c in comps:
            cs = set(c)
            vecs = [_loop_vector(label, loop_vectors) for v, label in lg.loops if v in cs]
            total -= d - _vector_rank(vecs)
        return total
    if kind == "C":
        touched = {v for e in lg.edges for v in e} | {v for v, _ in lg.loops}
        return len(touched)
    raise ValueError(f"unknown family kind {kind!r}")


def predicted_intercept_rank(g: PointHyperplaneGraph, normals: dict) -> int:
    """2 nu_P(E) + nu_L(E) minus the point-component deficiencies."""
    touched = {v for e in g.edges for v in e.ends}
    nP = sum(1 for v in g.point_vertices if v in touched)
    nL = sum(1 for v in g.line_vertices if v in touched)
    pg = LoopGraph(g.point_vertices, [e.ends for e in g.edges if e.tag == PP],
                   [(e.u, e.v) for e in g.edges if e.tag == PL])
    corr = 0
    for c in components(pg):
        if not set(c) & touched:
            continue
        vecs = [normals[label] for v, label in pg.loops if v in set(c)]
        corr += 2 - _vector_rank(vecs)
    return 2 * nP + nL - corr


def _cut(basis, s):
    """Spanning set of {x in span(basis) : <x, s> = 0}; None if span is inside s-perp."""
    vals = [dot(b, s) for b in basis]
    piv = next((k for k, c in enumerate(vals) if c != 0), None)
    if piv is None:
        return None
    b0, c0 = basis[piv], vals[piv]
    out = []
    for k, (b, c) in enumerate(zip(basis, vals)):
        if k == piv:
            continue
        out.append(tuple(x - (c / c0) * y for x, y in zip(b, b0)))
    return out


def intersection_dim(f: SubspaceFamily, s) -> int | None:
    """dim <U_e cap H : e> for the hyperplane with normal s, or None if not transversal."""
    rows = []
    for basis in f.bases:
        cut = _cut(basis, s)
        if cut is None:
            return None
        rows += [list(x) for x in cut]
    return rank(rows) if rows else 0


def dilworth_minimum(f: SubspaceFamily, cap: int = DILWORTH_CAP):
    """min over partitions of sum(dim <U_e : e in E_i> - 1), with a minimizing partition."""
    m = len(f.bases)
    if m > cap:
        from .errors import CapExceeded
        raise CapExceeded(f"{m} subspaces exceeds the partition cap {cap}")
    n = 1 << m
    values = np.zeros(n, dtype=np.int64)
    for a in range(1, n):
        values[a] = family_span_dim(f, [k for k in range(m) if (a >> k) & 1]) - 1
    best, choice = kernels.partition_min(values, m)
    parts = []
    a = n - 1
    while a:
        b = int(choice[a])
        parts.append(tuple(k for k in range(m) if (b >> k) & 1))
        a ^= b
    return int(best[n - 1]), tuple(parts)


def random_s(rng: random.Random, n: int):
    return tuple(Fraction(rng.randint(-S_DEN, S_DEN), S_DEN) for _ in range(n))


@dataclass(frozen=True)
class DilworthResult:
    achieved: int
    minimum: int
    s: tuple
    equal: bool
    draws: int
    rejected: int
    history: tuple
    partition: tuple


def dilworth_experiment(f: SubspaceFamily, trials: int = RETRY_BUDGET, rng: random.Random | None = None,
                        cap: int = DILWORTH_CAP) -> DilworthResult:
    """Random hyperplanes against the partition minimum; stops at the first equality.

    Non-transversal draws are rejected and do not count as trials.  The best
    transversal draw is reported if equality never occurs.
    """
    rng = rng or random.Random(0)
    for k, basis in enumerate(f.bases):
        if not basis or _vector_rank(basis) == 0:
            raise ValueError(f"subspace {k} is zero")
    minimum, partition = dilworth_minimum(f, cap)
    best = None
    history = []
    rejected = 0
    draws = 0
    while draws < trials:
        if rejected > 10 * max(trials, 1):
            raise NoTransversalHyperplane("no transversal hyperplane found")
        s = random_s(rng, f.ambient)
        got = intersection_dim(f, s)
        if got is None:
            rejected += 1
            continue
        draws += 1
        history.append(got)
        if best is None or got > best[0]:
            best = (got, s)
        if got == minimum:
            break
    if best is None:
        raise NoTransversalHyperplane("no transversal hyperplane found")
    return DilworthResult(best[0], minimum, best[1], best[0] == minimum, draws, rejected,
                          tuple(history), partition)


def _split_s(g, s):
    k = 2 * len(g.point_vertices)
    sp = {v: (s[2 * t], s[2 * t + 1]) for t, v in enumerate(g.point_vertices)}
    sl = {v: s[k + t] for t, v in enumerate(g.line_vertices)}
    return sp, sl


def realization_from_s(g: PointHyperplaneGraph, normals: dict, s) -> Configuration:
    """p(i) = s(i)^perp with every line through the origin."""
    sp, _ = _split_s(g, s)
    pts = {v: perp(sp[v]) for v in g.point_vertices}
    return Configuration(2, pts, {v: (normals[v], 0) for v in g.line_vertices})


def intersection_generators(g: PointHyperplaneGraph, normals: dict, s):
    """One explicit generator of U_e cap H per edge, in the coordinates of U.

    With p(i) = s(i)^perp: PP gives (p_i - p_j, p_j - p_i); PL ij gives a_j in
    block i and -<p_i, a_j^perp>/s(j) at j; LL kl gives -1/s(k) and 1/s(l).
    """
    sp, sl = _split_s(g, s)
    p = {v: perp(sp[v]) for v in g.point_vertices}
    coords = [(v, t) for v in g.point_vertices for t in range(2)] + [(v, 0) for v in g.line_vertices]
    idx = {c: k for k, c in enumerate(coords)}
    rows = []
    for e in g.edges:
        x = [Fraction(0)] * len(coords)
        if e.tag == PP:
            for t in range(2):
                x[idx[(e.u, t)]] = p[e.u][t] - p[e.v][t]
                x[idx[(e.v, t)]] = p[e.v][t] - p[e.u][t]
        elif e.tag == PL:
            a = normals[e.v]
            x[idx[(e.u, 0)]], x[idx[(e.u, 1)]] = Fraction(a[0]), Fraction(a[1])
            x[idx[(e.v, 0)]] = -dot(p[e.u], perp(a)) / sl[e.v]
        else:
            x[idx[(e.u, 0)]] = -1 / sl[e.u]
            x[idx[(e.v, 0)]] = 1 / sl[e.v]
        rows.append(x)
    return rows


def scale_line_columns(g: PointHyperplaneGraph, rows, s):
    """Multiply each line column j by -s(j)."""
    _, sl = _split_s(g, s)
    k = 2 * len(g.point_vertices)
    out = []
    for r in rows:
        r = list(r)
        for t, v in enumerate(g.line_vertices):
            r[k + t] = r[k + t] * (-sl[v])
        out.append(r)
    return out


def _admissible_s(g, f, s):
    sp, sl = _split_s(g, s)
    if len(set(sp.values())) != len(sp):
        return False
    if any(x == 0 for x in sl.values()):
        return False
    return all(_cut(b, s) is not None for b in f.bases)


@dataclass(frozen=True)
class Realization:
    config: Configuration
    s: tuple
    attempts: int
    rank: int


def synthesize_intercept_realization(g: PointHyperplaneGraph, normals: dict,
                                     rng: random.Random | None = None,
                                     budget: int = RETRY_BUDGET) -> Realization:
    """Line-concurrent placement with row-independent reduced matrix.

    The counts are checked first (CountsFail carries the report).  Points
    are p(i) = s(i)^perp for a random admissible s; draws are repeated until
    the exact rank of R' equals |E|.
    """
    report = check_fixed_intercept_general(g, normals)
    if not report.holds:
        raise CountsFail("the component-corrected intercept count fails", report)
    rng = rng or random.Random(0)
    f = intercept_family(g, normals)
    m = len(g.edges)
    for attempt in range(1, budget + 1):
        s = random_s(rng, f.ambient)
        if not _admissible_s(g, f, s):
            continue
        conf = realization_from_s(g, normals, s)
        r = reduced_intercept_matrix(g, conf).rank()
        if r == m:
            return Realization(conf, s, attempt, r)
    raise RetryBudgetExhausted(f"no row-independent realization in {budget} draws")


__all__ = [
    "SubspaceFamily", "build_family", "intercept_family", "family_span_dim", "predicted_rank",
    "predicted_intercept_rank", "intersection_dim", "dilworth_minimum", "dilworth_experiment",
    "DilworthResult", "intersection_generators", "scale_line_columns", "realization_from_s",
    "synthesize_intercept_realization", "Realization", "LL",
]
