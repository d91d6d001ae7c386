"""Constraint matrices and rigidity verdicts for every framework model.

Column labels are tuples ``(vertex, kind, index)``: kind ``"p"`` for point
velocity coordinates, ``"a"`` for normal velocities, ``"r"`` for offset
velocities and ``"q"`` for homogeneous (affine or spherical) coordinates.
Row labels are ``("edge", u, v)``, ``("unit", v)``, ``("vertex", v)``,
``("slider", v)`` or ``("pin", v)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import MissingPlacement, NonConcurrent, NonUnitNormal, OffSphere, SliderOffLine
from .exactla import DEFAULT_TOL, LabeledMatrix, dot, is_exact_value, rank, to_scalar
from .phgraph import LL, PL, PP, PointHyperplaneGraph

FLOAT_UNIT_TOL = 1e-12

MODELS = ("barjoint", "spherical", "pointline", "affine", "fixed-normal",
          "fixed-line", "fixed-intercept", "fixed-intercept-reduced", "slider")


def trivial_dim(model: str, d: int) -> int:
    """Dimension of the trivial motion space of a spanning framework."""
    if model in ("barjoint", "spherical", "pointline", "affine"):
        return comb(d + 1, 2)
    if model == "fixed-normal":
        return d
    if model == "fixed-line":
        return 0
    if model in ("fixed-intercept", "fixed-intercept-reduced", "slider"):
        return 1
    raise ValueError(f"unknown model {model!r}")


def _vec(xs):
    return tuple(to_scalar(x) for x in xs)


@dataclass(frozen=True)
class Configuration:
    """Placement of points (d-vectors) and hyperplanes (unit normal, offset)."""

    dim: int
    points: dict = field(default_factory=dict)
    hyperplanes: dict = field(default_factory=dict)
    check_units: bool = True

    def __post_init__(self):
        pts = {v: _vec(p) for v, p in self.points.items()}
        hps = {v: (_vec(a), to_scalar(r)) for v, (a, r) in self.hyperplanes.items()}
        exact = all(is_exact_value(x) for p in pts.values() for x in p) and all(
            is_exact_value(x) for a, r in hps.values() for x in a + (r,))
        if not exact:
            pts = {v: tuple(float(x) for x in p) for v, p in pts.items()}
            hps = {v: (tuple(float(x) for x in a), float(r)) for v, (a, r) in hps.items()}
        for v, p in pts.items():
            if len(p) != self.dim:
                raise ValueError(f"point {v!r} has dimension {len(p)}, expected {self.dim}")
        for v, (a, _) in hps.items():
            if len(a) != self.dim:
                raise ValueError(f"normal of {v!r} has dimension {len(a)}, expected {self.dim}")
            if self.check_units:
                n2 = dot(a, a)
                if (exact and n2 != 1) or (not exact and abs(n2 - 1) > FLOAT_UNIT_TOL):
                    raise NonUnitNormal(f"normal of {v!r} has squared norm {n2}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "hyperplanes", hps)
        object.__setattr__(self, "exact", exact)

    def normal(self, v):
        return self.hyperplanes[v][0]

    def offset(self, v):
        return self.hyperplanes[v][1]

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def one(self):
        return Fraction(1) if self.exact else 1.0


@dataclass(frozen=True)
class SphericalConfiguration:
    """Vectors in R^{d+1}, one per vertex.

    With ``normalized`` the vectors must be unit.  Otherwise they are ray
    representatives: only their direction (up to a positive factor) matters,
    which leaves every spherical rank unchanged and keeps exact data rational.
    """

    dim: int
    positions: dict
    normalized: bool = True

    def __post_init__(self):
        pos = {v: _vec(q) for v, q in self.positions.items()}
        exact = all(is_exact_value(x) for q in pos.values() for x in q)
        if not exact:
            pos = {v: tuple(float(x) for x in q) for v, q in pos.items()}
        for v, q in pos.items():
            if len(q) != self.dim + 1:
                raise ValueError(f"position of {v!r} must have {self.dim + 1} coordinates")
            n2 = dot(q, q)
            if self.normalized:
                if (exact and n2 != 1) or (not exact and abs(n2 - 1) > FLOAT_UNIT_TOL):
                    raise OffSphere(f"vertex {v!r} has squared norm {n2}")
            elif n2 == 0:
                raise OffSphere(f"vertex {v!r} is the zero vector")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "exact", exact)

    def equatorial(self, v) -> bool:
        return self.positions[v][-1] == 0


@dataclass(frozen=True)
class RigidityVerdict:
    model: str
    rank: int
    nullity: int
    trivial_dim: int
    classification: str
    rows: int
    cols: int

    @property
    def rigid(self) -> bool:
        return self.classification in ("rigid", "minimally-rigid")

    @property
    def internal_dof(self) -> int:
        return max(0, self.nullity - self.trivial_dim)

    def as_dict(self):
        return {"model": self.model, "rank": self.rank, "nullity": self.nullity,
                "trivial_dim": self.trivial_dim, "verdict": self.classification,
                "rows": self.rows, "cols": self.cols}


def _require(g: PointHyperplaneGraph, c: Configuration, *, all_points=False):
    if all_points:
        missing = [v for v in g.vertices if v not in c.points]
    else:
        missing = [v for v in g.point_vertices if v not in c.points]
        missing += [v for v in g.line_vertices if v not in c.hyperplanes]
    if missing:
        raise MissingPlacement(f"no placement for vertices {missing}")


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def perp(a):
    """Clockwise quarter turn: (x, y) -> (y, -x)."""
    return (a[1], -a[0])


class _Builder:
    def __init__(self, cols, zero):
        self.cols = list(cols)
        self.index = {c: k for k, c in enumerate(self.cols)}
        self.zero = zero
        self.rows = []
        self.labels = []

    def add(self, label, parts):
        row = [self.zero] * len(self.cols)
        for col, val in parts:
            row[self.index[col]] += val
        self.rows.append(row)
        self.labels.append(label)

    def done(self, notes=()):
        return LabeledMatrix.build(self.labels, self.cols, self.rows, notes)


def _block(v, kind, vec):
    return [((v, kind, k), x) for k, x in enumerate(vec)]


def euclidean_rigidity_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """Bar-joint rigidity matrix; every vertex of ``g`` must be a placed point."""
    _require(g, c, all_points=True)
    d = c.dim
    b = _Builder([(v, "p", k) for v in g.vertices for k in range(d)], c.zero())
    for e in g.edges:
        diff = _sub(c.points[e.u], c.points[e.v])
        b.add(("edge", e.u, e.v), _block(e.u, "p", diff) + _block(e.v, "p", tuple(-x for x in diff)))
    return b.done()


def spherical_rigidity_matrix(g: PointHyperplaneGraph, sc: SphericalConfiguration) -> LabeledMatrix:
    missing = [v for v in g.vertices if v not in sc.positions]
    if missing:
        raise MissingPlacement(f"no sphere position for {missing}")
    d = sc.dim
    zero = Fraction(0) if sc.exact else 0.0
    b = _Builder([(v, "q", k) for v in g.vertices for k in range(d + 1)], zero)
    q = sc.positions
    for e in g.edges:
        b.add(("edge", e.u, e.v), _block(e.u, "q", q[e.v]) + _block(e.v, "q", q[e.u]))
    for v in g.vertices:
        b.add(("vertex", v), _block(v, "q", q[v]))
    return b.done()


def lifted(c: Configuration, v):
    """(p, 1) for points and (a, 0) for hyperplanes."""
    if v in c.points and v not in c.hyperplanes:
        return c.points[v] + (c.one(),)
    return c.normal(v) + (c.zero(),)


def affine_ph_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """Affine point-hyperplane matrix; hyperplane offsets are taken as 0."""
    _require(g, c)
    d = c.dim
    b = _Builder([(v, "q", k) for v in g.vertices for k in range(d + 1)], c.zero())
    e_vec = tuple([c.zero()] * d + [c.one()])
    for e in g.edges:
        u, v = e.u, e.v
        if e.tag == PP:
            diff = _sub(lifted(c, u), lifted(c, v))
            b.add(("edge", u, v), _block(u, "q", diff) + _block(v, "q", tuple(-x for x in diff)))
        else:
            b.add(("edge", u, v), _block(u, "q", lifted(c, v)) + _block(v, "q", lifted(c, u)))
    for v in g.vertices:
        vec = e_vec if g.is_point(v) else lifted(c, v)
        b.add(("vertex", v), _block(v, "q", vec))
    return b.done()


def _ph_columns(g, d, normals=True, offsets=True):
    cols = [(v, "p", k) for v in g.point_vertices for k in range(d)]
    for v in g.line_vertices:
        if normals:
            cols += [(v, "a", k) for k in range(d)]
        if offsets:
            cols.append((v, "r", 0))
    return cols


def euclidean_ph_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """First-order system in (p_dot, a_dot, r_dot) with one unit row per hyperplane."""
    _require(g, c)
    b = _Builder(_ph_columns(g, c.dim), c.zero())
    for e in g.edges:
        u, v = e.u, e.v
        if e.tag == PP:
            diff = _sub(c.points[u], c.points[v])
            b.add(("edge", u, v), _block(u, "p", diff) + _block(v, "p", tuple(-x for x in diff)))
        elif e.tag == PL:
            b.add(("edge", u, v), _block(u, "p", c.normal(v)) + _block(v, "a", c.points[u])
                  + [((v, "r", 0), c.one())])
        else:
            b.add(("edge", u, v), _block(u, "a", c.normal(v)) + _block(v, "a", c.normal(u)))
    for v in g.line_vertices:
        b.add(("unit", v), _block(v, "a", c.normal(v)))
    return b.done()


def fixed_normal_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """Normals frozen; LL edges give explicit zero rows."""
    _require(g, c)
    b = _Builder(_ph_columns(g, c.dim, normals=False), c.zero())
    for e in g.edges:
        u, v = e.u, e.v
        if e.tag == PP:
            diff = _sub(c.points[u], c.points[v])
            b.add(("edge", u, v), _block(u, "p", diff) + _block(v, "p", tuple(-x for x in diff)))
        elif e.tag == PL:
            b.add(("edge", u, v), _block(u, "p", c.normal(v)) + [((v, "r", 0), c.one())])
        else:
            b.add(("edge", u, v), [])
    return b.done()


def fixed_line_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """Hyperplanes frozen entirely; only point velocities remain."""
    _require(g, c)
    b = _Builder(_ph_columns(g, c.dim, normals=False, offsets=False), c.zero())
    for e in g.edges:
        u, v = e.u, e.v
        if e.tag == PP:
            diff = _sub(c.points[u], c.points[v])
            b.add(("edge", u, v), _block(u, "p", diff) + _block(v, "p", tuple(-x for x in diff)))
        elif e.tag == PL:
            b.add(("edge", u, v), _block(u, "p", c.normal(v)))
        else:
            b.add(("edge", u, v), [])
    return b.done()


def _require_concurrent(g, c):
    if c.dim != 2:
        raise ValueError("fixed-intercept matrices are planar")
    bad = [v for v in g.line_vertices if c.offset(v) != 0]
    if bad:
        raise NonConcurrent(f"lines {bad} do not pass through the origin")


def fixed_intercept_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """Full matrix of a line-concurrent framework (all offsets zero)."""
    _require(g, c)
    _require_concurrent(g, c)
    b = _Builder(_ph_columns(g, 2, offsets=False), c.zero())
    for e in g.edges:
        u, v = e.u, e.v
        if e.tag == PP:
            diff = _sub(c.points[u], c.points[v])
            b.add(("edge", u, v), _block(u, "p", diff) + _block(v, "p", tuple(-x for x in diff)))
        elif e.tag == PL:
            b.add(("edge", u, v), _block(u, "p", c.normal(v)) + _block(v, "a", c.points[u]))
        else:
            b.add(("edge", u, v), _block(u, "a", c.normal(v)) + _block(v, "a", c.normal(u)))
    for v in g.line_vertices:
        b.add(("unit", v), _block(v, "a", c.normal(v)))
    return b.done()


def parallel(a, b) -> bool:
    return a[0] * b[1] - a[1] * b[0] == 0


def reduced_intercept_matrix(g: PointHyperplaneGraph, c: Configuration) -> LabeledMatrix:
    """Reduced matrix R' with one column per line.

    An LL row whose normals are parallel is a zero row, which keeps
    rank(full) = rank(R') + |V_L| exact in every case.
    """
    _require(g, c)
    _require_concurrent(g, c)
    cols = [(v, "p", k) for v in g.point_vertices for k in range(2)]
    cols += [(v, "a", 0) for v in g.line_vertices]
    b = _Builder(cols, c.zero())
    notes = []
    for e in g.edges:
        u, v = e.u, e.v
        if e.tag == PP:
            diff = _sub(c.points[u], c.points[v])
            b.add(("edge", u, v), _block(u, "p", diff) + _block(v, "p", tuple(-x for x in diff)))
        elif e.tag == PL:
            a = c.normal(v)
            b.add(("edge", u, v), _block(u, "p", a) + [((v, "a", 0), dot(c.points[u], perp(a)))])
        else:
            if parallel(c.normal(u), c.normal(v)):
                notes.append(("coincident-normals", u, v))
                b.add(("edge", u, v), [])
            else:
                b.add(("edge", u, v), [((u, "a", 0), c.one()), ((v, "a", 0), -c.one())])
    return b.done(notes)


def slider_matrix(g: PointHyperplaneGraph, sliders, c: Configuration) -> LabeledMatrix:
    """Bar-joint rows plus a vertical pin for each slider on the line y = 0."""
    if c.dim != 2:
        raise ValueError("slider frameworks are planar")
    _require(g, c, all_points=True)
    sliders = [v for v in g.vertices if v in set(sliders)]
    off = [v for v in sliders if c.points[v][1] != 0]
    if off:
        raise SliderOffLine(f"slider vertices {off} are not on the line y = 0")
    base = euclidean_rigidity_matrix(g, c)
    b = _Builder(base.cols, c.zero())
    b.rows = [list(r) for r in base.entries]
    b.labels = list(base.rows)
    for v in sliders:
        b.add(("slider", v), [((v, "p", 1), c.one())])
    return b.done()


def _span_rank(vectors, tol):
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(vectors, tol)


def spans(model: str, g: PointHyperplaneGraph, c, tol: float = DEFAULT_TOL) -> bool:
    """Whether the trivial motions of the model act faithfully on (g, c).

    For the projective models (bar-joint, spherical, point-hyperplane) this
    asks that the lifted vectors span at least a d-dimensional subspace, so
    that only the zero element of so(d+1) fixes them.
    """
    if model == "spherical":
        return _span_rank([c.positions[v] for v in g.vertices], tol) >= c.dim
    d = c.dim
    if model == "barjoint":
        return _span_rank([c.points[v] + (c.one(),) for v in g.vertices], tol) >= d
    if model == "slider":
        return len(g.vertices) > 0
    if model in ("pointline", "affine"):
        return _span_rank([lifted(c, v) for v in g.vertices], tol) >= d
    if model == "fixed-normal":
        return bool(g.point_vertices) or _span_rank([c.normal(v) for v in g.line_vertices], tol) == d
    if model == "fixed-line":
        return True
    if model in ("fixed-intercept", "fixed-intercept-reduced"):
        return bool(g.line_vertices) or any(any(x != 0 for x in c.points[v]) for v in g.point_vertices)
    raise ValueError(f"unknown model {model!r}")


def verdict(m: LabeledMatrix, model: str, dim: int = 2, spanning: bool = True,
            tol: float = DEFAULT_TOL) -> RigidityVerdict:
    """Classify a constraint matrix against the model's trivial dimension."""
    t = trivial_dim(model, dim)
    nrows, ncols = m.shape
    r = rank(m, tol)
    n = ncols - r
    if not spanning or n < t:
        cls = "not-spanning"
    elif n == t:
        cls = "minimally-rigid" if nrows == r == ncols - t else "rigid"
    else:
        cls = "flexible"
    return RigidityVerdict(model, r, n, t, cls, nrows, ncols)


def model_matrix(model: str, g: PointHyperplaneGraph, c, sliders=()) -> LabeledMatrix:
    if model == "barjoint":
        return euclidean_rigidity_matrix(g, c)
    if model == "spherical":
        return spherical_rigidity_matrix(g, c)
    if model == "pointline":
        return euclidean_ph_matrix(g, c)
    if model == "affine":
        return affine_ph_matrix(g, c)
    if model == "fixed-normal":
        return fixed_normal_matrix(g, c)
    if model == "fixed-line":
        return fixed_line_matrix(g, c)
    if model == "fixed-intercept":
        return fixed_intercept_matrix(g, c)
    if model == "fixed-intercept-reduced":
        return reduced_intercept_matrix(g, c)
    if model == "slider":
        return slider_matrix(g, sliders, c)
    raise ValueError(f"unknown model {model!r}")


def rigidity(model: str, g: PointHyperplaneGraph, c, sliders=(), tol: float = DEFAULT_TOL) -> RigidityVerdict:
    """Build the model's matrix, test spanning and classify."""
    m = model_matrix(model, g, c, sliders)
    return verdict(m, model, c.dim, spans(model, g, c, tol), tol)
