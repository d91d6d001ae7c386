"""Exact rational and tolerance-based float linear algebra.

Matrices come in two scalar kinds that are never mixed: exact
(``fractions.Fraction`` entries) and float.  Exact rank uses fraction-free
Bareiss elimination on an integer-scaled copy; float rank counts singular
values above ``tol * sigma_max``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NonFinite, SingularCayley

DEFAULT_TOL = 1e-9


def to_scalar(x):
    """Coerce ints and "n/d" strings to Fraction; floats stay floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.integer):
        return Fraction(int(x))
    raise TypeError(f"unsupported scalar {x!r}")


def is_exact_value(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


@dataclass(frozen=True)
class LabeledMatrix:
    """Dense matrix with a label per row and per column.

    ``exact`` is True when every entry is a Fraction.
    """

    rows: tuple
    cols: tuple
    entries: tuple
    exact: bool = True
    notes: tuple = ()

    def __post_init__(self):
        if len(self.entries) != len(self.rows):
            raise ValueError("row label count does not match entries")
        for r in self.entries:
            if len(r) != len(self.cols):
                raise ValueError("column label count does not match entries")

    @classmethod
    def build(cls, rows, cols, entries, notes=()):
        entries = tuple(tuple(r) for r in entries)
        exact = all(is_exact_value(x) for r in entries for x in r)
        if exact:
            entries = tuple(tuple(Fraction(x) for x in r) for r in entries)
        else:
            entries = tuple(tuple(float(x) for x in r) for r in entries)
        return cls(tuple(rows), tuple(cols), entries, exact, tuple(notes))

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def to_numpy(self):
        return np.array(
            [[float(x) for x in r] for r in self.entries], dtype=float
        ).reshape(self.shape)

    def col_index(self, label) -> int:
        return self.cols.index(label)

    def with_rows(self, labels, rows):
        """Return a copy with extra rows appended."""
        return LabeledMatrix.build(
            self.rows + tuple(labels), self.cols, self.entries + tuple(tuple(r) for r in rows)
        )

    def rank(self, tol: float = DEFAULT_TOL) -> int:
        return rank(self, tol)

    def nullity(self, tol: float = DEFAULT_TOL) -> int:
        return nullity(self, tol)


def _entries(m):
    if isinstance(m, LabeledMatrix):
        return m.entries, m.exact, m.shape[1]
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    exact = all(is_exact_value(x) for r in rows for x in r)
    return rows, exact, ncols


def _integer_rows(rows):
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            d = x.denominator if isinstance(x, Fraction) else 1
            den = den * d // math.gcd(den, d)
        out.append([int(x * den) for x in r])
    return out


def bareiss_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Pivot choice: first nonzero entry in the current column.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f == 0:
                if prev != 1 or pv != 1:
                    for j in range(c + 1, ncols):
                        row[j] = row[j] * pv // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pv - f * pr[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


def rank(m, tol: float = DEFAULT_TOL) -> int:
    """Rank of a LabeledMatrix or nested sequence.

    ``tol`` is ignored for exact matrices.
    """
    rows, exact, ncols = _entries(m)
    if not rows or ncols == 0:
        return 0
    if exact:
        return bareiss_rank(_integer_rows(rows))
    arr = np.array([[float(x) for x in r] for r in rows], dtype=float)
    return float_rank(arr, tol)


def float_rank(arr, tol: float = DEFAULT_TOL) -> int:
    arr = np.asarray(arr, dtype=float)
    if arr.size == 0:
        return 0
    if not np.all(np.isfinite(arr)):
        raise NonFinite("matrix contains NaN or Inf")
    s = np.linalg.svd(arr, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def nullity(m, tol: float = DEFAULT_TOL) -> int:
    _, _, ncols = _entries(m)
    return ncols - rank(m, tol)


def rref(rows):
    """Reduced row echelon form over the rationals; returns (R, pivots)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def nullspace(m, ncols: int | None = None):
    """Exact basis of the right kernel, one vector per free column."""
    rows, _, nc = _entries(m)
    if ncols is None:
        ncols = nc
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(r, v)) for r in m]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def transpose(a):
    return [list(c) for c in zip(*a)]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def det(a) -> Fraction:
    """Exact determinant by Gaussian elimination over Fraction."""
    a = [[Fraction(x) for x in r] for r in a]
    n = len(a)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out * sign


def inverse(a):
    n = len(a)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def rational_unit_vector(t) -> tuple:
    """Rational point on the unit circle, ((1-t^2)/(1+t^2), 2t/(1+t^2))."""
    t = Fraction(t)
    q = 1 + t * t
    return ((1 - t * t) / q, 2 * t / q)


def skew_from_params(params: Sequence, n: int):
    """Skew matrix with S[i][j] = p and S[j][i] = -p for each pair j < i.

    Pairs are consumed in the order (1,0), (2,0), (2,1), (3,0), ...
    """
    need = n * (n - 1) // 2
    params = [Fraction(p) for p in params]
    if len(params) != need:
        raise ValueError(f"need {need} Cayley parameters for dimension {n}")
    s = [[Fraction(0)] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i):
            s[i][j] = params[k]
            s[j][i] = -params[k]
            k += 1
    return s


def cayley_rotation(params: Sequence, n: int):
    """Rational rotation R = (I - S)(I + S)^{-1} of size n x n."""
    s = skew_from_params(params, n)
    eye = identity(n)
    plus = [[eye[i][j] + s[i][j] for j in range(n)] for i in range(n)]
    minus = [[eye[i][j] - s[i][j] for j in range(n)] for i in range(n)]
    try:
        inv = inverse(plus)
    except ZeroDivisionError:
        raise SingularCayley("I + S is singular") from None
    return mat_mul(minus, inv)


def is_orthogonal(r, tol: float = 1e-12) -> bool:
    n = len(r)
    prod = mat_mul(transpose(r), r)
    exact = all(is_exact_value(x) for row in r for x in row)
    for i in range(n):
        for j in range(n):
            want = 1 if i == j else 0
            if exact:
                if prod[i][j] != want:
                    return False
            elif abs(prod[i][j] - want) > tol:
                return False
    return True


def random_fraction(rng: random.Random, bound: int = 10, den_max: int = 10**6) -> Fraction:
    """Random rational with a large random denominator, in [-bound, bound]."""
    den = rng.randint(den_max // 2, den_max)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_unit_normal(rng: random.Random, den_max: int = 10**4) -> tuple:
    """Random rational unit 2-vector via the circle parametrization."""
    t = Fraction(rng.randint(-10 * den_max, 10 * den_max), rng.randint(1, den_max))
    x, y = rational_unit_vector(t)
    if rng.random() < 0.5:
        return (-x, -y)
    return (x, y)
