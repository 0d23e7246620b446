"""Linear subspaces of projective space and their Pluecker coordinates.

A k-dimensional linear subspace of C^n (a projective (k-1)-plane in
P^(n-1)) is stored as a full-rank k x n matrix of rationals whose rows span
it.  Pluecker coordinates are the maximal minors, indexed by k-subsets of
columns in lexicographic order.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .poly import DegenerateInputError, InputError, _zdet, as_rat


def _det(rows):
    """Exact determinant of a small rational matrix."""
    den = 1
    for r in rows:
        for v in r:
            den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [[int(v * den) for v in r] for r in rows]
    return Fraction(_zdet(ints), den ** len(rows))


def rref(matrix):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[as_rat(v) for v in r] for r in matrix]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank(matrix):
    return len(rref(matrix)[1])


def kernel_basis(matrix):
    """Rational basis of the right kernel {x : matrix x = 0}."""
    m, piv = rref(matrix)
    n = len(m[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def pluecker_from_matrix(matrix):
    """Maximal minors of a k x n matrix in lexicographic column order."""
    m = [[as_rat(v) for v in r] for r in matrix]
    k = len(m)
    n = len(m[0])
    out = tuple(_det([[row[c] for c in I] for row in m]) for I in combinations(range(n), k))
    if not any(out):
        raise DegenerateInputError("matrix is rank deficient")
    return out


def _primitive_rows(m):
    out = []
    for r in m:
        den = 1
        for v in r:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in r]
        g = math.gcd(*ints)
        out.append(tuple(v // g for v in ints) if g else tuple(ints))
    return tuple(out)


class LinSpace:
    """A k-dimensional linear subspace of Q^n given by spanning rows."""

    __slots__ = ("matrix", "k", "n", "_pl", "_ints")

    def __init__(self, matrix, check=True):
        m = tuple(tuple(as_rat(v) for v in r) for r in matrix)
        if not m or not m[0]:
            raise InputError("empty matrix")
        if any(len(r) != len(m[0]) for r in m):
            raise InputError("ragged matrix")
        self.matrix = m
        self.k = len(m)
        self.n = len(m[0])
        self._pl = None
        self._ints = None
        if check and rank(m) != self.k:
            raise DegenerateInputError("rows are linearly dependent")

    def pluecker(self):
        if self._pl is None:
            self._pl = pluecker_from_matrix(self.matrix)
        return self._pl

    def int_rows(self):
        """Rows scaled (each by a positive rational) to primitive integer vectors."""
        if self._ints is None:
            self._ints = _primitive_rows(self.matrix)
        return self._ints

    def rref(self):
        return LinSpace(rref(self.matrix)[0], check=False)

    def normalized_pluecker(self):
        """Pluecker vector scaled so the first nonzero entry is 1 (canonical)."""
        p = self.pluecker()
        lead = next(v for v in p if v != 0)
        return tuple(v / lead for v in p)

    def pluecker_float(self):
        """Unit-norm float Pluecker vector (sign is not canonical)."""
        v = np.array([float(x) for x in self.pluecker()])
        return v / np.linalg.norm(v)

    def same_space(self, other):
        return self.n == other.n and self.k == other.k and \
            self.normalized_pluecker() == other.normalized_pluecker()

    def chart_matrix(self, pivots):
        """Matrix of the same space with the identity in columns ``pivots``."""
        sub = [[row[c] for c in pivots] for row in self.matrix]
        inv = _inverse(sub)
        return tuple(
            tuple(sum(inv[i][j] * self.matrix[j][c] for j in range(self.k)) for c in range(self.n))
            for i in range(self.k)
        )

    def __eq__(self, other):
        return isinstance(other, LinSpace) and self.same_space(other)

    def __hash__(self):
        return hash(self.normalized_pluecker())

    def __repr__(self):
        rows = ["[" + ", ".join(str(v) for v in r) + "]" for r in self.matrix]
        return f"LinSpace([{', '.join(rows)}])"


def _inverse(m):
    k = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(k)] for i, r in enumerate(m)]
    red, piv = rref(aug)
    if piv[:k] != tuple(range(k)):
        raise DegenerateInputError("singular chart minor")
    return [r[k:] for r in red]


def chart_matrix(pivots, entries, n):
    """Build the k x n matrix with identity in ``pivots`` and ``entries`` elsewhere.

    ``entries`` is a k x (n-k) array listed row by row over the non-pivot
    columns in increasing order.
    """
    k = len(pivots)
    free = [c for c in range(n) if c not in pivots]
    rows = []
    for i in range(k):
        row = [Fraction(0)] * n
        row[pivots[i]] = Fraction(1)
        for j, c in enumerate(free):
            row[c] = as_rat(entries[i][j])
        rows.append(row)
    return LinSpace(rows, check=False)


@dataclass(frozen=True)
class ChartPoint:
    """A line in P^(n-1) in one of the two gluing charts of Gr(2, n).

    Chart 1 is the row span of [[1, 0, x...], [0, 1, y...]] (2n-4 parameters,
    x's first).  Chart 2 is the row span of [[1, x1, 0, x2...], [0, 0, 1, y...]]
    (2n-5 parameters: x1, then the n-3 further x's, then the n-3 y's); it
    covers the part of {p01 = 0} where p02 != 0.
    """

    chart_id: int
    params: tuple


def chart_point_matrix(c: ChartPoint, n: int) -> LinSpace:
    p = [as_rat(v) for v in c.params]
    if c.chart_id == 1:
        if len(p) != 2 * n - 4:
            raise InputError(f"chart 1 needs {2 * n - 4} parameters")
        m = n - 2
        return LinSpace([[1, 0] + p[:m], [0, 1] + p[m:]], check=False)
    if c.chart_id == 2:
        if len(p) != 2 * n - 5:
            raise InputError(f"chart 2 needs {2 * n - 5} parameters")
        m = n - 3
        return LinSpace([[1, p[0], 0] + p[1:1 + m], [0, 0, 1] + p[1 + m:]], check=False)
    raise InputError("chart id must be 1 or 2")


def best_chart(spaces):
    """Pivot set maximizing the smallest normalized |p_I| over ``spaces``."""
    vecs = [np.abs(s.pluecker_float()) for s in spaces]
    subsets = list(combinations(range(spaces[0].n), spaces[0].k))
    scores = np.min(np.vstack(vecs), axis=0)
    return subsets[int(np.argmax(scores))]


@dataclass(frozen=True)
class Pencil:
    """Line in the Grassmannian: t -> span(W, u0 + t*u1).

    ``W`` is a (k-1) x n matrix (possibly with zero rows, i.e. empty), and
    the image is the set of k-spaces between span(W) and span(W, u0, u1).
    """

    W: tuple
    u0: tuple
    u1: tuple

    def __post_init__(self):
        for u in (self.u0, self.u1):
            if rank(list(self.W) + [u]) != len(self.W) + 1:
                raise DegenerateInputError("pencil vector lies in W")


@dataclass(frozen=True)
class Segment:
    """Affine segment t -> A + t (B - A) of k x n matrices, t in [0, 1].

    ``pivots`` records the shared chart when both ends have the identity in
    those columns; such a family has full rank for every t.
    """

    start: tuple
    end: tuple
    pivots: tuple | None = None

    @property
    def k(self):
        return len(self.start)

    @property
    def n(self):
        return len(self.start[0])

    def int_family(self):
        """Integer matrices (A0, D) and a positive scale with scale*M(t) = A0 + t D.

        Rows are scaled independently, which leaves the spanned space unchanged.
        """
        a_rows, d_rows = [], []
        for ra, rb in zip(self.start, self.end):
            den = 1
            for v in ra + rb:
                den = den * v.denominator // math.gcd(den, v.denominator)
            ia = [int(v * den) for v in ra]
            ib = [int(v * den) for v in rb]
            id_ = [b - a for a, b in zip(ia, ib)]
            g = math.gcd(*ia, *id_)
            a_rows.append(tuple(v // g for v in ia))
            d_rows.append(tuple(v // g for v in id_))
        return tuple(a_rows), tuple(d_rows)


def pencil_eval(pencil, t):
    """Evaluate a :class:`Pencil` or a :class:`Segment` at parameter t."""
    t = as_rat(t)
    if isinstance(pencil, Pencil):
        u = [as_rat(a) + t * as_rat(b) for a, b in zip(pencil.u0, pencil.u1)]
        return LinSpace(list(pencil.W) + [u])
    return LinSpace(
        [[a + t * (b - a) for a, b in zip(ra, rb)] for ra, rb in zip(pencil.start, pencil.end)],
        check=False,
    )


def segment(a: LinSpace, b: LinSpace, pivots=None) -> Segment:
    """Straight segment from ``a`` to ``b`` in a common affine chart.

    The chart is chosen so that both endpoints are well inside it; inside a
    chart the segment never drops rank.
    """
    if a.k != b.k or a.n != b.n:
        raise InputError("endpoints live in different Grassmannians")
    if pivots is None:
        pivots = best_chart([a, b])
    return Segment(a.chart_matrix(pivots), b.chart_matrix(pivots), tuple(pivots))


def raw_segment(a: LinSpace, b: LinSpace) -> Segment:
    """Convex combination of the stored matrices, without changing charts."""
    if a.k != b.k or a.n != b.n:
        raise InputError("endpoints live in different Grassmannians")
    return Segment(a.matrix, b.matrix)


def random_space(k, n, seed, height, max_tries=100):
    """Random k-subspace of Q^n with entries num/den, |num| <= h, 1 <= den <= h.

    ``seed`` is an int (a PCG64 stream is derived from it) or a numpy
    Generator that is advanced in place.
    """
    if not 1 <= k < n or height < 1:
        raise InputError("need 1 <= k < n and height >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed, "random_space")
    for _ in range(max_tries):
        nums = rng.integers(-height, height + 1, size=(k, n))
        dens = rng.integers(1, height + 1, size=(k, n))
        m = [[Fraction(int(a), int(b)) for a, b in zip(rn, rd)] for rn, rd in zip(nums, dens)]
        if rank(m) == k:
            return LinSpace(m, check=False)
    raise RuntimeError("could not draw a full-rank matrix")


def make_rng(seed, tag="", counter=0):
    """Independent reproducible PCG64 stream for (seed, tag, counter)."""
    ss = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(tag.encode()), counter))
    return np.random.Generator(np.random.PCG64(ss))


def schubert_hyperplane(fixed, k):
    """Linear form in Pluecker coordinates vanishing on k-spaces meeting ``fixed``.

    ``fixed`` is an (n-k) x n matrix.  The coefficient of p_I is
    det([E_I; fixed]) with E_I the unit rows indexed by I, so that
    sum_I c_I p_I(L) = det([L; fixed]).
    """
    fx = [[as_rat(v) for v in r] for r in fixed]
    n = len(fx[0])
    if len(fx) != n - k:
        raise InputError("fixed space has the wrong dimension")
    out = []
    for I in combinations(range(n), k):
        rows = [[Fraction(int(c == i)) for c in range(n)] for i in I] + fx
        out.append(_det(rows))
    return tuple(out)


def fraction_str(v):
    v = as_rat(v)
    return f"{v.numerator}/{v.denominator}"


def linspace_to_json(space):
    return {
        "matrix": [[fraction_str(v) for v in r] for r in space.matrix],
        "pluecker": [fraction_str(v) for v in space.pluecker()],
    }


def linspace_from_json(obj):
    rows = obj["matrix"] if isinstance(obj, dict) else obj
    try:
        return LinSpace([[Fraction(str(v)) for v in r] for r in rows])
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise InputError(f"bad matrix entry: {e}") from e
