"""Counting regions of hyperplane arrangements.

For l generic hyperplanes seen in an affine chart of P^(n-1) the
characteristic polynomial is

    chi(t) = sum_{i=0}^{n-1} (-1)^i C(l, i) t^(n-1-i),

and the arrangement cuts projective space into (|chi(1)| + |chi(-1)|) / 2
regions.  ``lattice_char_poly`` recomputes chi from the intersection poset
by Whitney's formula, and ``brute_force_regions`` counts realized sign
vectors, so both counts can be checked against each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .grassmann import kernel_basis, make_rng, rank
from .poly import InputError, MPoly


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of chi(t), highest power first (degree n - 1)."""

    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, t):
        v = 0
        for c in self.coeffs:
            v = v * t + c
        return v

    def __str__(self):
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            k = d - i
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            a = abs(c)
            body = mono if (a == 1 and mono) else (f"{a}{mono}" if mono else str(a))
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])


def char_poly_generic(l, n) -> CharPoly:
    if l < 0 or n < 2:
        raise InputError("need l >= 0 and n >= 2")
    return CharPoly(tuple((-1) ** i * math.comb(l, i) for i in range(n)))


def projective_region_count(chi: CharPoly) -> int:
    total = abs(chi(1)) + abs(chi(-1))
    if total % 2:
        raise ArithmeticError(f"non-integer region count from {chi}")
    return total // 2


def max_avoidance_regions(m, n):
    """The bound (1/4) (sum_{i<=n} C(m, i) + C(m-1, n)) as (exact, floor)."""
    if m < 1 or n < 2:
        raise InputError("need m >= 1 and n >= 2")
    val = Fraction(sum(math.comb(m, i) for i in range(n + 1)) + math.comb(m - 1, n), 4)
    return val, math.floor(val)


# ---------------------------------------------------------------------------
# arrangements and oracles
# ---------------------------------------------------------------------------

@dataclass
class Arrangement:
    """Projective hyperplanes {h . x = 0} in P^(n-1), given by integer normals."""

    normals: list

    def __post_init__(self):
        self.normals = [tuple(int(x) for x in h) for h in self.normals]
        if not self.normals:
            return
        n = len(self.normals[0])
        if any(len(h) != n for h in self.normals) or any(not any(h) for h in self.normals):
            raise InputError("normals must be nonzero and of equal length")
        for a, b in combinations(self.normals, 2):
            if rank([list(a), list(b)]) < 2:
                raise InputError("repeated hyperplane")

    @property
    def n(self):
        return len(self.normals[0]) if self.normals else 0

    @classmethod
    def from_forms(cls, forms):
        normals = []
        for f in forms:
            if isinstance(f, MPoly):
                if f.degree() != 1 or not f.is_homogeneous():
                    raise InputError("arrangement forms must be linear")
                den = math.lcm(*(c.denominator for c in f.terms.values()))
                h = [0] * f.nvars
                for e, c in f.terms.items():
                    h[e.index(1)] = int(c * den)
                normals.append(h)
            else:
                normals.append(f)
        return cls(normals)

    @classmethod
    def random(cls, l, n, seed, height=9):
        rng = make_rng(seed, "arrangement.random")
        normals = []
        while len(normals) < l:
            h = [int(x) for x in rng.integers(-height, height + 1, size=n)]
            cand = normals + [h]
            if all(rank([list(cand[i]) for i in S]) == len(S)
                   for k in range(1, min(len(cand), n) + 1)
                   for S in combinations(range(len(cand)), k) if len(cand) - 1 in S):
                normals.append(h)
        return cls(normals)


def lattice_char_poly(arr: Arrangement, chart=None) -> CharPoly:
    """Whitney's formula chi(t) = sum_S (-1)^|S| t^(dim - rank S) in an affine chart.

    The chart is {c . x = 1}; subsets S count when their hyperplanes meet in
    the chart (rank of normals equals rank with the chart equation appended
    as an affine row).
    """
    n = arr.n
    if chart is None:
        chart = _generic_chart(arr)
    coeffs = [0] * n
    H = [list(h) for h in arr.normals]
    for k in range(0, len(H) + 1):
        for S in combinations(range(len(H)), k):
            rows = [H[i] for i in S]
            r = rank(rows) if rows else 0
            # affine system {h . x = 0 for h in S, chart . x = 1} is solvable iff
            # chart is not in the span of the rows
            if rank(rows + [list(chart)]) == r:
                continue
            coeffs[r] += (-1) ** k
    return CharPoly(tuple(coeffs))


def _generic_chart(arr):
    """A chart normal c in general position with respect to every flat."""
    n = arr.n
    for seed in range(100):
        rng = make_rng(seed, "arrangement.chart")
        c = [int(x) for x in rng.integers(-50, 51, size=n)]
        H = [list(h) for h in arr.normals]
        ok = True
        for k in range(0, len(H) + 1):
            for S in combinations(range(len(H)), k):
                rows = [H[i] for i in S]
                r = rank(rows) if rows else 0
                if r < n and rank(rows + [c]) == r:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return c
    raise RuntimeError("no generic chart found")


@dataclass
class BruteForceCount:
    regions: int
    sign_vectors: list
    samples: int
    coverage_warning: bool


def brute_force_regions(arr: Arrangement, samples=4000, seed=0, expected=None) -> BruteForceCount:
    """Count projective regions by realized sign vectors up to the antipodal map.

    Samples are random integer points plus the exact neighbourhood of every
    vertex: near a vertex v cut out by n-1 independent hyperplanes every sign
    pattern on those hyperplanes occurs, with the remaining signs those of v.
    Two points with equal sign vectors lie in one convex cone, so the segment
    between them never crosses a hyperplane and each class is one region.
    """
    if len(arr.normals) > 8 or arr.n > 4:
        raise InputError("brute force is limited to 8 hyperplanes in n <= 4")
    H = arr.normals
    n = arr.n
    seen = set()

    def add(sig):
        if 0 in sig:
            return
        neg = tuple(-s for s in sig)
        seen.add(min(sig, neg))

    if not H:
        return BruteForceCount(1, [()], 0, False)
    rng = make_rng(seed, "arrangement.brute")
    pts = rng.integers(-10 ** 6, 10 ** 6 + 1, size=(samples, n))
    for x in pts:
        add(tuple(_sgn(sum(a * int(b) for a, b in zip(h, x))) for h in H))
    for S in combinations(range(len(H)), n - 1):
        rows = [list(H[i]) for i in S]
        if rank(rows) < n - 1:
            continue
        v = kernel_basis(rows)[0]
        base = [_sgn(sum(Fraction(a) * b for a, b in zip(h, v))) for h in H]
        if any(base[i] == 0 for i in range(len(H)) if i not in S):
            continue
        for pattern in range(2 ** (n - 1)):
            sig = list(base)
            for bit, i in enumerate(S):
                sig[i] = 1 if (pattern >> bit) & 1 else -1
            add(tuple(sig))
    count = len(seen)
    warn = expected is not None and count < expected
    return BruteForceCount(count, sorted(seen), samples, warn)


def _sgn(x):
    return (x > 0) - (x < 0)


def arrangement_report(l, n):
    chi = char_poly_generic(l, n)
    out = {"chi": list(chi.coeffs), "chi_text": str(chi),
           "projective_regions": projective_region_count(chi)}
    if l >= 1:
        val, fl = max_avoidance_regions(l, n)
        out["bound_exact"] = str(val)
        out["bound_floor"] = fl
    return out
