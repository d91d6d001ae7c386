"""Independent oracles and random instance generators shared by the tests.

Oracles avoid the package's kernels: ranks come from sympy, components from
networkx and counts from direct itertools enumeration.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import networkx as nx
import sympy

from phrigid.exactla import random_fraction, random_unit_normal, rational_unit_vector
from phrigid.matrices import Configuration
from phrigid.phgraph import LoopGraph, PointHyperplaneGraph


def sympy_rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in r] for r in rows]).rank()


def matrix_nullity(m) -> int:
    return len(m.cols) - sympy_rank(m.entries)


def partitions(items):
    """All set partitions, by recursion on the first element."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for p in partitions(rest):
        yield [[head]] + p
        for k in range(len(p)):
            yield p[:k] + [[head] + p[k]] + p[k + 1:]


def touched(g, edge_ids):
    vs = set()
    for k in edge_ids:
        vs |= set(g.edges[k].ends)
    return vs


def nx_components(vertices, pairs):
    h = nx.Graph()
    h.add_nodes_from(vertices)
    h.add_edges_from(pairs)
    return [set(c) for c in nx.connected_components(h)]


def subsets(m, min_size=1):
    for k in range(min_size, m + 1):
        yield from itertools.combinations(range(m), k)


def laman_oracle(g):
    """|E| = 2|V|-3 and |F| <= 2|V(F)|-3 for every nonempty F with two or more vertices."""
    m = len(g.edges)
    if m != 2 * len(g.vertices) - 3:
        return False
    return all(len(F) <= 2 * len(touched(g, F)) - 3 for F in subsets(m))


def collinear_oracle(g, X):
    """Brute-force collinear count: some E' of size 2|V|-3 passes every partition of every A."""
    X = set(X)
    need = 2 * len(g.vertices) - 3
    m = len(g.edges)

    def block(A):
        vs = touched(g, A)
        return 2 * len(vs - X) + len(vs & X) - 2

    def ok(A):
        nX = len(touched(g, A) & X)
        return all(len(A) <= sum(block(b) for b in p) + nX - 1 for p in partitions(A))

    if need <= 0:
        return True
    for Ep in itertools.combinations(range(m), need):
        if all(ok(A) for A in subsets_of(Ep)):
            return True
    return False


def subsets_of(items):
    items = list(items)
    for k in range(1, len(items) + 1):
        yield from itertools.combinations(items, k)


def scene_oracle(g, d=2):
    P, L = set(g.point_vertices), set(g.line_vertices)
    need = d * len(P) + len(L) - d
    m = len(g.edges)

    def f(A):
        vs = touched(g, A)
        return d * len(vs & P) + len(vs & L) - d

    if need < 0 or need > m:
        cond_d = False
    else:
        cond_d = any(all(len(A) <= f(A) for A in subsets_of(Ep))
                     for Ep in itertools.combinations(range(m), need))
    cond_e = min(sum(f(b) for b in p) for p in partitions(range(m))) >= need
    return cond_d, cond_e


def fixed_normal_oracle(g):
    P, L = set(g.point_vertices), set(g.line_vertices)
    if len(g.edges) != 2 * len(P) + len(L) - 2:
        return False
    for F in subsets(len(g.edges)):
        vs = touched(g, F)
        nP, nL = len(vs & P), len(vs & L)
        bound = 2 * nP - 3 if nL == 0 else 2 * nP + nL - 2
        if len(F) > bound:
            return False
    return True


def intercept_general_oracle(g, normals):
    """Component-corrected fixed-intercept count, using networkx components and sympy ranks."""
    P, L = list(g.point_vertices), list(g.line_vertices)
    if len(g.edges) != 2 * len(P) + len(L) - 1:
        return False
    for e in g.edges:
        if e.u in L and e.v in L and sympy_rank([normals[e.u], normals[e.v]]) < 2:
            return False
    for F in subsets(len(g.edges)):
        vs = touched(g, F)
        pp = [g.edges[k].ends for k in F if g.edges[k].u in P and g.edges[k].v in P]
        pl = [g.edges[k] for k in F if (g.edges[k].u in P) != (g.edges[k].v in P)]
        corr = 0
        for comp in nx_components(P, pp):
            if not comp & vs:
                continue
            vecs = [normals[e.v] for e in pl if e.u in comp]
            corr += 2 - (sympy_rank(vecs) if vecs else 0)
        if len(F) > 2 * len(vs & set(P)) + len(vs & set(L)) - 1 - corr:
            return False
    return True


def random_ph_graph(rng: random.Random, n_points, n_lines, n_edges, ll=True, pp=True):
    P = list(range(n_points))
    L = list(range(n_points, n_points + n_lines))
    pairs = [(a, b) for a in P for b in L]
    if pp:
        pairs += list(itertools.combinations(P, 2))
    if ll:
        pairs += list(itertools.combinations(L, 2))
    n_edges = min(n_edges, len(pairs))
    return PointHyperplaneGraph(P, L, rng.sample(pairs, n_edges))


def random_loop_graph(rng, d=2):
    n = rng.randint(1, 5)
    vs = list(range(n))
    edges = [tuple(rng.sample(vs, 2)) for _ in range(rng.randint(0, 6))] if n > 1 else []
    pool = [random_unit_normal(rng) for _ in range(2)]
    loops = []
    for _ in range(rng.randint(0, 5)):
        v = rng.choice(vs)
        # repeat vectors now and then so loop spans can be deficient
        a = rng.choice(pool) if rng.random() < 0.5 else random_unit_normal(rng)
        loops.append((v, a if d == 2 else a[:d]))
    return LoopGraph(vs, edges, loops)


def random_config(rng: random.Random, g, den=1000, concurrent=False):
    pts = {v: (random_fraction(rng, 10, den), random_fraction(rng, 10, den)) for v in g.point_vertices}
    hps = {v: (random_unit_normal(rng), 0 if concurrent else random_fraction(rng, 10, den))
           for v in g.line_vertices}
    return Configuration(2, pts, hps)


def random_normals(rng: random.Random, lines):
    return {v: random_unit_normal(rng) for v in lines}


def unit_from_int(t):
    return rational_unit_vector(Fraction(t))


def framework_json(g, c=None, sliders=None):
    """Schema form of a graph and placement, names as ids."""
    name = g.name
    data = {"dim": 2, "point_vertices": [name(v) for v in g.point_vertices],
            "line_vertices": [name(v) for v in g.line_vertices],
            "edges": [[name(e.u), name(e.v)] for e in g.edges]}
    if c is not None:
        data["points"] = {name(v): [str(x) for x in p] for v, p in c.points.items()}
        data["lines"] = {name(v): {"normal": [str(x) for x in a], "offset": str(r)}
                         for v, (a, r) in c.hyperplanes.items()}
    if sliders:
        data["sliders"] = {name(v): str(x) for v, x in sliders.items()}
    return data


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path
