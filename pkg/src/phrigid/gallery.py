"""Small worked instances used by the tests, the acceptance suite and the CLI docs.

Each builder returns dense integer ids (points first) with readable names.
"""

from __future__ import annotations

from fractions import Fraction as Q

from .matrices import Configuration
from .phgraph import PointHyperplaneGraph


def _graph(points, lines, edges):
    names = list(points) + list(lines)
    idx = {n: k for k, n in enumerate(names)}
    return PointHyperplaneGraph(
        range(len(points)), range(len(points), len(names)),
        [(idx[a], idx[b]) for a, b in edges], {k: n for k, n in enumerate(names)})


def ids(g: PointHyperplaneGraph, *names):
    rev = {n: v for v, n in g.names.items()}
    return [rev[n] for n in names]


def three_line_graph():
    """Four points on three lines; collinear bar-joint realizations are blocked.

    With X = {v1, v2, v3} the count fails at |E| = 11 > 10, while the plain
    Laman count (X empty) holds.
    """
    return _graph(
        ["u1", "u2", "u3", "u4"], ["v1", "v2", "v3"],
        [("u1", "u2"), ("u3", "u4"),
         ("u1", "v1"), ("u2", "v1"), ("u1", "v2"), ("u2", "v2"),
         ("u3", "v2"), ("u4", "v2"), ("u3", "v3"), ("u4", "v3"),
         ("v1", "v3")])


def three_line_blocks(g):
    """Edge sets induced by {v1,u1,u2,v2}, {v2,u3,u4,v3} and {v1,v3}."""
    groups = [{"v1", "u1", "u2", "v2"}, {"v2", "u3", "u4", "v3"}, {"v1", "v3"}]
    out = []
    for grp in groups:
        out.append(tuple(k for k, e in enumerate(g.edges)
                         if g.name(e.u) in grp and g.name(e.v) in grp))
    return out


def three_line_config():
    """Rational placement close to the drawn one (normals rounded to 3-4-5 vectors)."""
    g = three_line_graph()
    u1, u2, u3, u4, v1, v2, v3 = g.vertices
    pts = {u1: (Q(-1, 2), Q(2, 5)), u2: (Q(-1, 4), Q(7, 20)),
           u3: (Q(-1, 10), Q(-7, 10)), u4: (Q(-1, 10), Q(-1, 5))}
    hps = {v1: ((0, 1), Q(-3, 2)),
           v2: ((Q(4, 5), Q(-3, 5)), Q(-43, 50)),
           v3: ((Q(4, 5), Q(3, 5)), Q(43, 50))}
    return g, Configuration(2, pts, hps)


BODY_LINES = {"B1": ("l2", "l5", "l3"), "B2": ("l4", "l3"),
              "B3": ("l1", "l5", "l4"), "B4": ("l2", "l1")}


def sliding_pair_chain():
    """Four bars (two points each) joined through five slider lines."""
    points, edges = [], []
    for b in sorted(BODY_LINES):
        x, y = f"{b}a", f"{b}b"
        points += [x, y]
        edges.append((x, y))
        for ln in BODY_LINES[b]:
            edges += [(x, ln), (y, ln)]
    return _graph(points, ["l1", "l2", "l3", "l4", "l5"], edges)


def body_partition(g):
    """Edges grouped by the bar they touch."""
    out = []
    for b in sorted(BODY_LINES):
        out.append(tuple(k for k, e in enumerate(g.edges) if g.name(e.u).startswith(b)))
    return out


def pinned_lines_graph():
    """Four points held by two frozen lines; minimally fixed-line rigid."""
    return _graph(
        ["u1", "u2", "u3", "u4"], ["v1", "v2"],
        [("u1", "u3"), ("u2", "u4"), ("u1", "u4"), ("u2", "u3"),
         ("u1", "v1"), ("u2", "v1"), ("u3", "v2"), ("u4", "v2")])


def pinned_lines_config(exact: bool = True):
    g = pinned_lines_graph()
    u1, u2, u3, u4, v1, v2 = g.vertices
    if exact:
        pts = {u1: (2, Q(1, 2)), u2: (Q(7, 2), Q(3, 5)), u3: (2, Q(6, 5)), u4: (Q(7, 2), Q(17, 10))}
        hps = {v1: ((0, 1), 0), v2: ((Q(3, 5), Q(-4, 5)), 0)}
    else:
        s = 0.5 ** 0.5
        pts = {u1: (2.0, 0.5), u2: (3.5, 0.6), u3: (2.0, 1.2), u4: (3.5, 1.7)}
        hps = {v1: ((0.0, 1.0), 0.0), v2: ((s, -s), 0.0)}
    return g, Configuration(2, pts, hps)


def fixed_normal_triangle():
    """Triangle of points, each on its own line: six constraints, one internal motion."""
    return _graph(
        ["u1", "u2", "u3"], ["v1", "v2", "v3"],
        [("u1", "u2"), ("u2", "u3"), ("u1", "u3"),
         ("u1", "v1"), ("u2", "v2"), ("u3", "v3")])


def fixed_normal_triangle_config():
    g = fixed_normal_triangle()
    u1, u2, u3, v1, v2, v3 = g.vertices
    pts = {u1: (0, 0), u2: (4, 0), u3: (2, 3)}
    hps = {v1: ((Q(3, 5), Q(4, 5)), 0), v2: ((Q(3, 5), Q(-4, 5)), Q(-12, 5)), v3: ((0, 1), -3)}
    return g, Configuration(2, pts, hps)


INTERCEPT_F = [("p1", "p2"), ("p3", "p4"), ("p1", "u1"), ("p1", "u2"),
               ("p2", "u1"), ("p3", "u1"), ("p3", "u2"), ("p4", "u2")]


def intercept_graph():
    """Four points, two concurrent lines, nine edges.

    The first eight edges form two point components that both see u1 and
    u2; the ninth edge joins the components.
    """
    return _graph(["p1", "p2", "p3", "p4"], ["u1", "u2"], INTERCEPT_F + [("p2", "p3")])


def intercept_subset(g):
    want = {frozenset(e) for e in INTERCEPT_F}
    return tuple(k for k, e in enumerate(g.edges) if frozenset((g.name(e.u), g.name(e.v))) in want)


def intercept_normals(g, duplicated: bool):
    u1, u2 = g.line_vertices
    if duplicated:
        return {u1: (Q(3, 5), Q(4, 5)), u2: (Q(3, 5), Q(4, 5))}
    return {u1: (Q(3, 5), Q(4, 5)), u2: (Q(-5, 13), Q(12, 13))}


def mixed_constraint_example():
    """Eight lines: v1, v2 keep their normals, v3 is frozen, and
    {v4, v5, v6}, {v7, v8} rotate about two centres.  Four points carry
    the lines."""
    points = ["w1", "w2", "w3", "w4"]
    lines = [f"v{k}" for k in range(1, 9)]
    edges = [("w1", "w2"), ("w2", "w3"), ("w3", "w4"), ("w1", "w4"), ("w1", "w3"),
             ("w1", "v1"), ("w2", "v2"), ("w3", "v3"), ("w4", "v4"),
             ("w1", "v5"), ("w2", "v6"), ("w3", "v7"), ("w4", "v8")]
    g = _graph(points, lines, edges)
    v = dict(zip(lines, g.line_vertices))
    spec = {"fixed": [v["v3"]], "fixed_normal": [v["v1"], v["v2"]],
            "rotation_classes": [[v["v4"], v["v5"], v["v6"]], [v["v7"], v["v8"]]]}
    return g, spec
