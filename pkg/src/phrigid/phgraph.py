"""Point-hyperplane graphs, loop graphs and edge-subset machinery.

Vertices are integer ids.  Iteration order is always V_P followed by V_L in
the order given at construction, and every bitmask uses that order for its
bit positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CapExceeded, InvalidGraph

PP, PL, LL = "PP", "PL", "LL"

SUBSET_CAP = 16
PARTITION_CAP = 12


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    tag: str

    def __iter__(self):
        return iter((self.u, self.v))

    @property
    def ends(self):
        return (self.u, self.v)


class PointHyperplaneGraph:
    """Graph on V_P (points) and V_L (hyperplanes) without parallel edges.

    PL edges are stored point first.  Other edges keep vertex order.
    """

    def __init__(self, point_vertices: Iterable[int], line_vertices: Iterable[int],
                 edges: Iterable, names: dict | None = None):
        self.point_vertices = tuple(point_vertices)
        self.line_vertices = tuple(line_vertices)
        pset, lset = set(self.point_vertices), set(self.line_vertices)
        if len(pset) != len(self.point_vertices) or len(lset) != len(self.line_vertices):
            raise InvalidGraph("repeated vertex id")
        if pset & lset:
            raise InvalidGraph("V_P and V_L must be disjoint")
        self.vertices = self.point_vertices + self.line_vertices
        self.position = {v: k for k, v in enumerate(self.vertices)}
        built = []
        seen = set()
        for item in edges:
            item = tuple(item)
            if len(item) == 3:
                a, b, tag = item
            elif len(item) == 2:
                (a, b), tag = item, None
            else:
                raise InvalidGraph(f"bad edge {item!r}")
            if a not in self.position or b not in self.position:
                raise InvalidGraph(f"edge {item!r} has an unknown endpoint")
            if a == b:
                raise InvalidGraph(f"self-loop at {a!r}")
            key = frozenset((a, b))
            if key in seen:
                raise InvalidGraph(f"parallel edge {a!r}-{b!r}")
            seen.add(key)
            real = self.tag_of(a, b)
            if tag is not None and tag != real:
                raise InvalidGraph(f"edge {a!r}-{b!r} tagged {tag} but is {real}")
            if real == PL and a in lset:
                a, b = b, a
            elif real != PL and self.position[a] > self.position[b]:
                a, b = b, a
            built.append(Edge(a, b, real))
        self.edges = tuple(built)
        self.names = dict(names or {})

    def tag_of(self, a, b) -> str:
        pa = a in self._pset
        pb = b in self._pset
        if pa and pb:
            return PP
        if pa or pb:
            return PL
        return LL

    @property
    def _pset(self):
        cache = self.__dict__.get("_pset_cache")
        if cache is None:
            cache = frozenset(self.point_vertices)
            self.__dict__["_pset_cache"] = cache
        return cache

    def is_point(self, v) -> bool:
        return v in self._pset

    def name(self, v) -> str:
        return str(self.names.get(v, v))

    def edges_of(self, tag: str):
        return [k for k, e in enumerate(self.edges) if e.tag == tag]

    @property
    def E_PP(self):
        return self.edges_of(PP)

    @property
    def E_PL(self):
        return self.edges_of(PL)

    @property
    def E_LL(self):
        return self.edges_of(LL)

    def vertex_mask(self, vs: Iterable) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.position[v]
        return m

    def edge_vertex_masks(self) -> list[int]:
        return [(1 << self.position[e.u]) | (1 << self.position[e.v]) for e in self.edges]

    def is_bipartite(self) -> bool:
        return all(e.tag == PL for e in self.edges)

    def with_edges(self, extra) -> "PointHyperplaneGraph":
        return PointHyperplaneGraph(self.point_vertices, self.line_vertices,
                                    [e.ends for e in self.edges] + [tuple(x) for x in extra],
                                    self.names)

    def relabel_lines(self, sliders: Iterable[int]) -> "PointHyperplaneGraph":
        """Same edges, with ``sliders`` as V_L and every other vertex in V_P."""
        sl = set(sliders)
        pts = [v for v in self.vertices if v not in sl]
        lns = [v for v in self.vertices if v in sl]
        return PointHyperplaneGraph(pts, lns, [e.ends for e in self.edges], self.names)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return (f"PointHyperplaneGraph(|V_P|={len(self.point_vertices)}, "
                f"|V_L|={len(self.line_vertices)}, |E|={len(self.edges)})")

    def __eq__(self, other):
        if not isinstance(other, PointHyperplaneGraph):
            return NotImplemented
        return (self.point_vertices == other.point_vertices
                and self.line_vertices == other.line_vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.point_vertices, self.line_vertices, self.edges))


def bar_joint_graph(vertices: Iterable[int], edges: Iterable, names=None) -> PointHyperplaneGraph:
    """Plain graph: every vertex is a point."""
    return PointHyperplaneGraph(vertices, (), edges, names)


@dataclass(frozen=True)
class EdgeSubset:
    parent: PointHyperplaneGraph
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        n = len(self.parent.edges)
        for k in self.members:
            if not 0 <= k < n:
                raise InvalidGraph(f"edge index {k} out of range")

    @classmethod
    def full(cls, g):
        return cls(g, frozenset(range(len(g.edges))))

    @classmethod
    def from_mask(cls, g, mask: int):
        return cls(g, frozenset(k for k in range(len(g.edges)) if (mask >> k) & 1))

    @property
    def mask(self) -> int:
        m = 0
        for k in self.members:
            m |= 1 << k
        return m

    def sorted(self) -> tuple:
        return tuple(sorted(self.members))

    def edges(self):
        return [self.parent.edges[k] for k in self.sorted()]

    def vertices(self) -> set:
        out = set()
        for e in self.edges():
            out.update(e.ends)
        return out

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())


@dataclass(frozen=True)
class LoopGraph:
    """Graph whose loops carry a label (a vertex id, a vector, or None)."""

    vertices: tuple
    edges: tuple = ()
    loops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "loops", tuple(tuple(x) for x in self.loops))
        vs = set(self.vertices)
        for a, b in self.edges:
            if a not in vs or b not in vs:
                raise InvalidGraph(f"edge {a!r}-{b!r} leaves vertex set")
        for v, _ in self.loops:
            if v not in vs:
                raise InvalidGraph(f"loop at unknown vertex {v!r}")

    def items(self):
        """Edges then loops, as (kind, data) pairs in a fixed order."""
        return [("edge", e) for e in self.edges] + [("loop", x) for x in self.loops]


def nu(subset: EdgeSubset, mark: Iterable) -> int:
    """Number of vertices of ``mark`` incident with some edge of ``subset``."""
    return len(subset.vertices() & set(mark))


def derive_point_loop_graph(g: PointHyperplaneGraph, restriction: EdgeSubset | None = None) -> LoopGraph:
    """G^P: drop V_L; each PL edge becomes a loop at its point labeled by its line."""
    idx = restriction.sorted() if restriction is not None else range(len(g.edges))
    edges, loops = [], []
    for k in idx:
        e = g.edges[k]
        if e.tag == PP:
            edges.append(e.ends)
        elif e.tag == PL:
            loops.append((e.u, e.v))
    return LoopGraph(g.point_vertices, edges, loops)


def derive_line_loop_graph(g: PointHyperplaneGraph, restriction: EdgeSubset | None = None) -> LoopGraph:
    """G^L: drop V_P; each PL edge becomes a loop at its line labeled by its point."""
    idx = restriction.sorted() if restriction is not None else range(len(g.edges))
    edges, loops = [], []
    for k in idx:
        e = g.edges[k]
        if e.tag == LL:
            edges.append(e.ends)
        elif e.tag == PL:
            loops.append((e.v, e.u))
    return LoopGraph(g.line_vertices, edges, loops)


def components(g) -> list:
    """Connected pieces as sorted tuples, ordered by smallest member."""
    if isinstance(g, LoopGraph):
        vertices, pairs = g.vertices, g.edges
    else:
        vertices, pairs = g.vertices, [e.ends for e in g.edges]
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    comps = [tuple(sorted(c)) for c in groups.values()]
    comps.sort(key=lambda c: c[0])
    return comps


def induced_subgraph(g: PointHyperplaneGraph, F: EdgeSubset) -> PointHyperplaneGraph:
    """Subgraph spanned by the edges of F and their endpoints."""
    vs = F.vertices()
    return PointHyperplaneGraph(
        [v for v in g.point_vertices if v in vs],
        [v for v in g.line_vertices if v in vs],
        [g.edges[k].ends for k in F.sorted()],
        g.names,
    )


def _check_cap(n, cap, what):
    if n > cap:
        raise CapExceeded(f"{what}: {n} edges exceeds cap {cap}")


def enumerate_subsets(g: PointHyperplaneGraph, min_size: int = 1, max_size: int | None = None,
                      cap: int = SUBSET_CAP) -> Iterator[EdgeSubset]:
    """Edge subsets by size, then lexicographically within each size."""
    m = len(g.edges)
    _check_cap(m, cap, "subset enumeration")
    if max_size is None:
        max_size = m
    for k in range(max(min_size, 0), min(max_size, m) + 1):
        for combo in combinations(range(m), k):
            yield EdgeSubset(g, frozenset(combo))


def set_partitions(items) -> Iterator[tuple]:
    """All set partitions of ``items`` in restricted-growth-string order."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield ()
        return
    rgs = [0] * n
    high = [0] * n

    while True:
        blocks: list = [[] for _ in range(max(rgs) + 1)]
        for x, b in zip(items, rgs):
            blocks[b].append(x)
        yield tuple(tuple(b) for b in blocks)
        i = n - 1
        while i > 0 and rgs[i] == high[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        for j in range(i + 1, n):
            rgs[j] = 0
        for j in range(i, n):
            high[j] = max(high[j - 1], rgs[j])


def enumerate_partitions(subset: EdgeSubset, cap: int = PARTITION_CAP) -> Iterator[tuple]:
    """Set partitions of a subset's edge indices (RGS order)."""
    _check_cap(len(subset), cap, "partition enumeration")
    return set_partitions(subset.sorted())
