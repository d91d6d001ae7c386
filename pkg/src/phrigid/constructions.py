"""Graph surgeries that reduce constrained planar models to the unconstrained one."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NotATree, OverlappingClasses, UnsupportedCase
from .exactla import LabeledMatrix, dot, random_fraction, random_unit_normal
from .matrices import Configuration, euclidean_ph_matrix, perp
from .phgraph import LoopGraph, PointHyperplaneGraph, components


def _check_tree(vertices, edges):
    vs = set(vertices)
    if len(edges) != len(vs) - 1:
        raise NotATree(f"{len(edges)} edges cannot span {len(vs)} vertices as a tree")
    for a, b in edges:
        if a not in vs or b not in vs or a == b:
            raise NotATree(f"edge {a!r}-{b!r} is not between distinct line vertices")
    if len(components(LoopGraph(tuple(vs), edges))) != 1:
        raise NotATree("tree edges do not connect every line vertex")


def add_normal_tree(g: PointHyperplaneGraph, tree_edges=None) -> PointHyperplaneGraph:
    """G + T: a spanning tree of LL edges on V_L (default: a path in vertex order)."""
    lines = list(g.line_vertices)
    if not lines:
        raise NotATree("no line vertices to span")
    if tree_edges is None:
        tree_edges = list(zip(lines, lines[1:]))
    tree_edges = [tuple(e) for e in tree_edges]
    _check_tree(lines, tree_edges)
    return g.with_edges(tree_edges)


def pin_rotation_row(system: LabeledMatrix, c: Configuration, pivot) -> LabeledMatrix:
    """Append <a_pivot^perp, a_pivot dot> = 0 to a system with normal-velocity columns."""
    a = c.normal(pivot)
    if len(a) != 2:
        raise ValueError("rotation pinning is planar")
    n = 0
    while ("pin", pivot, n) in system.rows:
        n += 1
    row = [c.zero()] * len(system.cols)
    for k, x in enumerate(perp(a)):
        row[system.col_index((pivot, "a", k))] = x
    return system.with_rows([("pin", pivot, n)], [row])


@dataclass(frozen=True)
class Augmentation:
    """G' with the added block K and the placement bindings."""

    graph: PointHyperplaneGraph
    k_points: tuple
    k_line: int
    centre_vertex: dict
    connection_edges: tuple
    hints: dict = field(default_factory=dict)


def _classes(g, fixed, fixed_normal, rotation_classes):
    fixed = [int(v) for v in fixed]
    fixed_normal = [int(v) for v in fixed_normal]
    classes = [tuple(int(v) for v in S) for S in rotation_classes]
    lines = set(g.line_vertices)
    seen = {}
    for role, group in [("fixed", fixed), ("fixed_normal", fixed_normal)] + [
            (f"class {k}", S) for k, S in enumerate(classes)]:
        for v in group:
            if v not in lines:
                raise OverlappingClasses(f"{v!r} in {role} is not a line vertex")
            if v in seen:
                raise OverlappingClasses(f"line {g.name(v)} is in both {seen[v]} and {role}")
            seen[v] = role
    if any(not S for S in classes):
        raise OverlappingClasses("empty rotation class")
    return fixed, fixed_normal, classes


def mixed_augment(g: PointHyperplaneGraph, fixed=(), fixed_normal=(), rotation_classes=()) -> Augmentation:
    """Attach a rigid block K and wire the constrained lines to it.

    K is one line v0 with k = max(2, |classes|) points, each on v0, joined
    by a path of bars (2k - 1 edges, minimally rigid).  v0 meets each
    fixed-normal line; the centre point u_S meets every line of S; each
    fixed line meets v0 and the first point of K.  The hint ``centre`` binds
    c(S) to the position of u_S.
    """
    fixed, fixed_normal, classes = _classes(g, fixed, fixed_normal, rotation_classes)
    if len(fixed) + len(classes) < 1 or len(fixed) + len(classes) + len(fixed_normal) < 2:
        raise UnsupportedCase(
            "needs at least one fixed line or rotation class and at least two constrained "
            "objects in total; smaller cases have only the trivial motions to remove")
    k = max(2, len(classes))
    base = max(g.vertices, default=-1) + 1
    kp = tuple(range(base, base + k))
    v0 = base + k
    names = dict(g.names)
    for j, u in enumerate(kp):
        names[u] = f"K_u{j + 1}"
    names[v0] = "K_v0"
    k_edges = [(u, v0) for u in kp] + list(zip(kp, kp[1:]))
    conn = [(v0, v) for v in fixed_normal]
    centre = {}
    for j, S in enumerate(classes):
        centre[j] = kp[j]
        conn += [(kp[j], v) for v in S]
    for v in fixed:
        conn += [(v0, v), (kp[0], v)]
    edges = [e.ends for e in g.edges] + k_edges + conn
    gp = PointHyperplaneGraph(list(g.point_vertices) + list(kp), list(g.line_vertices) + [v0], edges, names)
    hints = {"centre": {j: u for j, u in centre.items()}, "classes": [list(S) for S in classes],
             "fixed": fixed, "fixed_normal": fixed_normal}
    return Augmentation(gp, kp, v0, centre, tuple(conn), hints)


def mixed_constraint_matrix(g: PointHyperplaneGraph, c: Configuration, fixed=(), fixed_normal=(),
                            rotation_classes=(), centres=None) -> LabeledMatrix:
    """Point-line system plus the line constraints.

    Fixed lines get a_dot = 0 and r_dot = 0, fixed-normal lines a_dot = 0, and
    each line v of a class S rotates about c(S): <c(S), a_dot_v> + r_dot_v = 0.
    """
    fixed, fixed_normal, classes = _classes(g, fixed, fixed_normal, rotation_classes)
    m = euclidean_ph_matrix(g, c)
    labels, rows = [], []

    def row(parts):
        r = [c.zero()] * len(m.cols)
        for col, x in parts:
            r[m.col_index(col)] += x
        return r

    for v in fixed + fixed_normal:
        for t in range(c.dim):
            labels.append(("fix-normal", v, t))
            rows.append(row([((v, "a", t), c.one())]))
    for v in fixed:
        labels.append(("fix-offset", v))
        rows.append(row([((v, "r", 0), c.one())]))
    for j, S in enumerate(classes):
        cs = centres[j]
        for v in S:
            labels.append(("centre", j, v))
            rows.append(row([((v, "a", t), cs[t]) for t in range(c.dim)] + [((v, "r", 0), c.one())]))
    return m.with_rows(labels, rows)


def random_mixed_placement(g: PointHyperplaneGraph, aug: Augmentation, rng: random.Random,
                           den: int = 10**4):
    """Random rational data for G and G' with every line of S through c(S) = p'(u_S)."""
    gp = aug.graph
    pts = {v: (random_fraction(rng, 10, den), random_fraction(rng, 10, den)) for v in gp.point_vertices}
    on = {}
    for j, S in enumerate(aug.hints["classes"]):
        for v in S:
            on[v] = pts[aug.centre_vertex[j]]
    hps = {}
    for v in gp.line_vertices:
        a = random_unit_normal(rng)
        r = -dot(on[v], a) if v in on else random_fraction(rng, 10, den)
        hps[v] = (a, r)
    cp = Configuration(2, pts, hps)
    c = Configuration(2, {v: pts[v] for v in g.point_vertices}, {v: hps[v] for v in g.line_vertices})
    centres = {j: pts[u] for j, u in aug.centre_vertex.items()}
    return c, cp, centres


def random_fixed_normal_placement(g: PointHyperplaneGraph, rng: random.Random, den: int = 10**4):
    pts = {v: (random_fraction(rng, 10, den), random_fraction(rng, 10, den)) for v in g.point_vertices}
    hps = {v: (random_unit_normal(rng), random_fraction(rng, 10, den)) for v in g.line_vertices}
    return Configuration(2, pts, hps)


__all__ = ["add_normal_tree", "pin_rotation_row", "mixed_augment", "mixed_constraint_matrix",
           "Augmentation", "random_mixed_placement", "random_fixed_normal_placement"]
