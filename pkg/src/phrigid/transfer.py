"""Projective transfer between point-hyperplane, spherical and bar-joint models.

Exact data never leaves the rationals.  Sphere positions are kept as ray
representatives (p, 1) and (a, 0); spherical ranks only see directions, and
the composite map to a collinear bar-joint framework,

    q_i = R u_i / <R u_i, e>,

is rational because the normalizing square roots cancel.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import EquatorHit, NotAMotion, NotOrthogonal, NotTangent, RetryBudgetExhausted
from .exactla import DEFAULT_TOL, cayley_rotation, dot, is_orthogonal, mat_vec, rank
from .matrices import (Configuration, SphericalConfiguration, euclidean_ph_matrix, lifted,
                       spherical_rigidity_matrix)
from .phgraph import PointHyperplaneGraph

EQUATOR_RETRIES = 20

# Sends the north pole e to (0, 1, 0) and keeps the first axis fixed.
SLIDER_ROTATION = ((1, 0, 0), (0, 0, 1), (0, -1, 0))


def central_project(x):
    """x / |x| in floating point; ``x`` must have last coordinate 1."""
    if x[-1] != 1:
        raise ValueError("central projection expects a point of the affine chart")
    n = math.sqrt(sum(float(t) ** 2 for t in x))
    return tuple(float(t) / n for t in x)


def psi(x, m, normalized: bool = True):
    """Tangent map at phi(x): (m - <m, x> e) / |x|.

    With ``normalized=False`` the 1/|x| factor is dropped, which gives the
    velocity of the ray representative x itself and stays rational.
    """
    if m[-1] != 0:
        raise NotTangent("m must satisfy <m, e> = 0")
    s = dot(m, x)
    w = tuple(mi for mi in m[:-1]) + (m[-1] - s,)
    if not normalized:
        return w
    n = math.sqrt(sum(float(t) ** 2 for t in x))
    return tuple(float(t) / n for t in w)


def lift(c: Configuration) -> dict:
    """(p, 1) for each point and (a, 0) for each hyperplane."""
    out = {v: p + (c.one(),) for v, p in c.points.items()}
    out.update({v: a + (c.zero(),) for v, (a, _) in c.hyperplanes.items()})
    return out


def drop(u):
    """Inverse of the point lift."""
    return tuple(u[:-1])


def sphere_image(g: PointHyperplaneGraph, c: Configuration, normalized: bool | None = None):
    """Sphere positions of a point-hyperplane framework.

    Exact configurations give ray representatives unless ``normalized`` is
    forced; float configurations are projected to the unit sphere.
    """
    if normalized is None:
        normalized = not c.exact
    pos = {}
    for v in g.vertices:
        u = lifted(c, v)
        pos[v] = central_project(u) if normalized and g.is_point(v) else u
    if normalized:
        pos = {v: tuple(float(t) for t in q) for v, q in pos.items()}
    return SphericalConfiguration(c.dim, pos, normalized=normalized)


def rotate(sc: SphericalConfiguration, R) -> SphericalConfiguration:
    if not is_orthogonal(R):
        raise NotOrthogonal("rotation matrix is not orthogonal")
    return SphericalConfiguration(sc.dim, {v: tuple(mat_vec(R, q)) for v, q in sc.positions.items()},
                                  normalized=sc.normalized)


def invert(sc: SphericalConfiguration, flip) -> SphericalConfiguration:
    flip = set(flip)
    return SphericalConfiguration(
        sc.dim, {v: tuple(-t for t in q) if v in flip else q for v, q in sc.positions.items()},
        normalized=sc.normalized)


def random_rotation(rng: random.Random, n: int):
    """Cayley rotation with small random rational parameters."""
    params = [Fraction(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(n * (n - 1) // 2)]
    return cayley_rotation(params, n), params


@dataclass(frozen=True)
class TransferResult:
    config: Configuration
    rotation: tuple
    params: tuple
    inverted: tuple
    attempts: int


def collinear_image(g: PointHyperplaneGraph, c: Configuration, R) -> TransferResult:
    """Apply one rotation; raise EquatorHit when an image stays on the equator."""
    n = c.dim + 1
    pts = {}
    flipped = []
    for v in g.vertices:
        w = mat_vec(R, lifted(c, v))
        h = w[-1]
        if h == 0:
            raise EquatorHit(f"vertex {g.name(v)} stays on the equator")
        if h < 0:
            flipped.append(v)
        pts[v] = tuple(t / h for t in w[: n - 1])
    conf = Configuration(c.dim, pts, {})
    return TransferResult(conf, tuple(tuple(r) for r in R), (), tuple(flipped), 1)


def transfer_to_collinear(g: PointHyperplaneGraph, c: Configuration, R=None,
                          rng: random.Random | None = None, retries: int = EQUATOR_RETRIES) -> TransferResult:
    """Bar-joint framework whose V_L images lie on one hyperplane.

    With an explicit ``R`` a single attempt is made.  Otherwise Cayley
    rotations are drawn from ``rng`` until no image lands on the equator.
    """
    if R is not None:
        return collinear_image(g, c, R)
    rng = rng or random.Random(0)
    for attempt in range(1, retries + 1):
        R, params = random_rotation(rng, c.dim + 1)
        try:
            res = collinear_image(g, c, R)
        except EquatorHit:
            continue
        return TransferResult(res.config, res.rotation, tuple(params), res.inverted, attempt)
    raise RetryBudgetExhausted(f"every one of {retries} rotations hit the equator")


def on_common_hyperplane(c: Configuration, vertices, tol: float = DEFAULT_TOL) -> bool:
    """True when the lifted points of ``vertices`` have rank at most d."""
    rows = [c.points[v] + (c.one(),) for v in vertices]
    if len(rows) <= c.dim:
        return True
    return rank(rows, tol) <= c.dim


def intercept_to_slider(g: PointHyperplaneGraph, c: Configuration) -> Configuration:
    """Planar line-concurrent framework to a bar-joint framework with sliders.

    The fixed rotation moves the north pole onto the equator, so the lines
    land on y = 0 and a vanishing offset velocity becomes a horizontal
    slider motion.
    """
    res = collinear_image(g, c, [[Fraction(x) for x in r] for r in SLIDER_ROTATION])
    return res.config


def _blocks(m, v, kind):
    return [k for k, col in enumerate(m.cols) if col[0] == v and col[1] == kind]


def _residual_zero(m, vec, tol):
    res = mat_vec(m.entries, vec)
    if m.exact:
        return all(x == 0 for x in res)
    scale = max([1.0] + [abs(float(x)) for x in vec])
    return all(abs(float(x)) <= tol * scale * 10 for x in res)


def transport_motion(direction: str, g: PointHyperplaneGraph, c: Configuration, motion,
                     tol: float = DEFAULT_TOL):
    """Move a motion between the point-hyperplane and spherical systems.

    ``forward`` takes a vector over the columns of ``euclidean_ph_matrix``
    and returns one over the columns of the spherical matrix of the ray
    image.  ``back`` is the inverse.  Both sides are residual-checked.
    """
    src_ph = euclidean_ph_matrix(g, c)
    sc = sphere_image(g, c, normalized=False)
    src_sp = spherical_rigidity_matrix(g, sc)
    d = c.dim
    motion = list(motion)
    if direction == "forward":
        if not _residual_zero(src_ph, motion, tol):
            raise NotAMotion("input violates the point-hyperplane system")
        out = [c.zero()] * len(src_sp.cols)
        for v in g.vertices:
            qcols = _blocks(src_sp, v, "q")
            if g.is_point(v):
                pd = [motion[k] for k in _blocks(src_ph, v, "p")]
                m = tuple(pd) + (c.zero(),)
                w = psi(lifted(c, v), m, normalized=False)
            else:
                w = [motion[k] for k in _blocks(src_ph, v, "a")] + [motion[k] for k in _blocks(src_ph, v, "r")]
            for k, x in zip(qcols, w):
                out[k] = x
        if not _residual_zero(src_sp, out, tol):
            raise NotAMotion("image violates the spherical system")
        return out
    if direction == "back":
        if not _residual_zero(src_sp, motion, tol):
            raise NotAMotion("input violates the spherical system")
        out = [c.zero()] * len(src_ph.cols)
        for v in g.vertices:
            w = [motion[k] for k in _blocks(src_sp, v, "q")]
            if g.is_point(v):
                for k, x in zip(_blocks(src_ph, v, "p"), w[:d]):
                    out[k] = x
            else:
                for k, x in zip(_blocks(src_ph, v, "a"), w[:d]):
                    out[k] = x
                out[_blocks(src_ph, v, "r")[0]] = w[d]
        if not _residual_zero(src_ph, out, tol):
            raise NotAMotion("image violates the point-hyperplane system")
        return out
    raise ValueError("direction must be 'forward' or 'back'")
