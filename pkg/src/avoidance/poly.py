"""Exact polynomial arithmetic over the rationals.

Three polynomial types are provided:

``UPoly``
    univariate polynomial with :class:`fractions.Fraction` coefficients,
    stored low degree first.
``MPoly``
    sparse multivariate polynomial, a map from exponent tuples to
    nonzero coefficients.
``BinForm``
    binary form ``sum c[i] * s0^(d-i) * s1^i``.

The real-root machinery (Sturm chains, root isolation) works on primitive
integer coefficient lists internally; the ``_z*`` helpers below are that
kernel.  Nothing in this module uses floating point.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

Rat = Fraction

INF = math.inf


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class DegenerateInputError(InputError):
    """Input for which the requested quantity is undefined."""


class ZeroFormError(DegenerateInputError):
    """An identically zero form where a nonzero one is required.

    For restrictions of a defining equation this signals containment of
    the linear space in the variety.
    """


class ParseError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InputError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# integer polynomial kernel (lists of ints, index = degree)
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _zsub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _zscale(a, c):
    if c == 0:
        return []
    return [c * v for v in a]


def _zderiv(a):
    return _trim([i * a[i] for i in range(1, len(a))])


def _zcontent(a):
    return math.gcd(*a) if a else 0


def _zprimitive(a):
    """Divide by the positive content; the sign of ``a`` is kept."""
    g = _zcontent(a)
    if g <= 1:
        return list(a)
    return [v // g for v in a]


def _zprem(a, b):
    """Pseudo-remainder that is a *positive* multiple of the true remainder.

    Each elimination step multiplies by lc(b); the sign is corrected at the
    end so Sturm chains built from it keep the right signs.
    """
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return r
    lb = b[-1]
    steps = 0
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * v for v in r]
        for i, v in enumerate(b):
            r[shift + i] -= lr * v
        r.pop()
        _trim(r)
        steps += 1
    if lb < 0 and steps % 2 == 1:
        r = [-v for v in r]
    return r


def _zdivexact(a, b):
    """Quotient of ``a`` by ``b`` in Z[t]; raises if ``b`` does not divide ``a``."""
    b = list(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    q = [0] * max(0, len(r) - len(b) + 1)
    lb = b[-1]
    while r and len(r) >= len(b):
        lr = r[-1]
        if lr % lb:
            raise ArithmeticError("inexact polynomial division")
        c = lr // lb
        shift = len(r) - len(b)
        q[shift] = c
        for i, v in enumerate(b):
            r[shift + i] -= c * v
        _trim(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _zgcd(a, b):
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a = _zprimitive(_trim(list(a)))
    b = _zprimitive(_trim(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zprem(a, b)
        a, b = b, _zprimitive(r)
    if not a:
        return []
    if a[-1] < 0:
        a = [-v for v in a]
    return a


def _zsquarefree(a):
    d = _zderiv(a)
    if not d:
        return _zprimitive(a)
    g = _zgcd(a, d)
    if len(g) <= 1:
        return _zprimitive(a)
    return _zprimitive(_zdivexact(_zprimitive(a), g))


def _zhorner(a, num, den):
    """``den**deg(a) * a(num/den)`` as an exact integer (den > 0)."""
    if not a:
        return 0
    acc = a[-1]
    dp = 1
    for c in reversed(a[:-1]):
        dp *= den
        acc = acc * num + c * dp
    return acc


def _zsign_at(a, x):
    if x == INF:
        return (a[-1] > 0) - (a[-1] < 0) if a else 0
    if x == -INF:
        if not a:
            return 0
        s = (a[-1] > 0) - (a[-1] < 0)
        return s if (len(a) - 1) % 2 == 0 else -s
    x = as_rat(x)
    v = _zhorner(a, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def _zsturm_chain(a):
    """Sturm chain of a squarefree integer polynomial."""
    chain = [list(a)]
    d = _zderiv(a)
    if not d:
        return chain
    chain.append(_zprimitive(d))
    while True:
        r = _zprem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_zprimitive([-v for v in r]))
        if len(chain[-1]) == 1:
            break
    return chain


def _variations(chain, x):
    prev = 0
    count = 0
    for p in chain:
        s = _zsign_at(p, x)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _taylor_shift1(p):
    """Coefficients of p(t + 1)."""
    a = list(p)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _sign_changes(a):
    prev = 0
    count = 0
    for v in a:
        if v:
            s = 1 if v > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _descartes01(p):
    """Descartes bound for the number of roots of p in (0, 1)."""
    return _sign_changes(_taylor_shift1(p[::-1]))


def _isolate01_descartes(p, max_depth=48):
    """Isolate roots in (0, 1) by Descartes bisection (Vincent-Collins-Akritas).

    Returns dyadic intervals (lo, hi) with non-root endpoints, or None when
    the input is not suited (multiple roots, root on a bisection point).
    """
    out = []
    stack = [(p, 0, 0)]  # polynomial for (c/2^k, (c+1)/2^k), c, k
    while stack:
        q, c, k = stack.pop()
        v = _descartes01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((Fraction(c, 1 << k), Fraction(c + 1, 1 << k)))
            continue
        if k >= max_depth:
            return None
        D = len(q) - 1
        left = [coef << (D - i) for i, coef in enumerate(q)]
        if sum(left) == 0:
            return None
        right = _taylor_shift1(left)
        stack.append((right, 2 * c + 1, k + 1))
        stack.append((left, 2 * c, k + 1))
    out.sort()
    return out


def isolate_unit_interval(p):
    """Isolating intervals (lo, hi) for the distinct roots of an integer
    polynomial in the open interval (0, 1).

    Interior endpoints are never roots; 0 or 1 can be a root only if it is
    an endpoint of the unit interval itself, and is then not counted.
    """
    p = _trim(list(p))
    if len(p) <= 1:
        return []
    if p[0] != 0 and sum(p) != 0:
        if _descartes01(p) == 0:
            return []
        ivs = _isolate01_descartes(p)
        if ivs is not None:
            return ivs
    sq = _zsquarefree(p)
    if len(sq) <= 1:
        return []
    ivs = _isolate_chain(_zsturm_chain(sq), Fraction(0), Fraction(1))
    if ivs and _zsign_at(sq, Fraction(1)) == 0:
        ivs = ivs[:-1]
    return ivs


def _rat_to_int_poly(coeffs):
    """Clear denominators of a Fraction coefficient list (content kept free)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _trim([int(c * den) for c in coeffs])


def _zinterpolate(values):
    """Integer polynomial (times a positive constant) through (i, values[i]).

    Returns ``(coeffs, scale)`` with ``scale * p(t) = sum coeffs[j] t^j`` where
    ``p`` is the unique polynomial of degree < len(values) with p(i) = values[i].
    """
    n = len(values)
    diffs = list(values)
    newton = [diffs[0]]
    for k in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0])
    # p(t) = sum_k newton[k] * C(t, k); multiply through by (n-1)!
    scale = math.factorial(n - 1)
    out = [0] * n
    falling = [1]  # coefficients of t(t-1)...(t-k+1)
    for k in range(n):
        w = newton[k] * (scale // math.factorial(k))
        if w:
            for j, v in enumerate(falling):
                out[j] += w * v
        falling = _zsub([0] + falling, _zscale(falling, k))
    out = _trim(out)
    g = math.gcd(scale, *out) if out else scale
    return [v // g for v in out], scale // g


def _zdet(mat):
    """Determinant of an integer matrix by Bareiss elimination."""
    m = [list(r) for r in mat]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# UPoly
# ---------------------------------------------------------------------------

class UPoly:
    """Univariate polynomial over Q.  ``coeffs[i]`` is the coefficient of t^i.

    The zero polynomial has ``coeffs == ()`` and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [as_rat(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_ints(cls, coeffs):
        obj = cls.__new__(cls)
        c = list(coeffs)
        _trim(c)
        obj.coeffs = tuple(Fraction(v) for v in c)
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _binop(self, other, op):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly([op(x, y) for x, y in zip(a, b)])

    def __add__(self, other):
        return self._binop(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            o = as_rat(other)
            return UPoly([c * o for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = UPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return " + ".join(parts)

    def deriv(self):
        return UPoly([i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(r) - len(other.coeffs) + 1)
        lb = other.coeffs[-1]
        while r and len(r) >= len(other.coeffs):
            c = r[-1] / lb
            shift = len(r) - len(other.coeffs)
            q[shift] = c
            for i, v in enumerate(other.coeffs):
                r[shift + i] -= c * v
            while r and r[-1] == 0:
                r.pop()
        return UPoly(q), UPoly(r)

    def int_coeffs(self):
        """Primitive integer coefficient list with the same sign as ``self``."""
        return _zprimitive(_rat_to_int_poly(self.coeffs))

    def monic(self):
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def gcd(self, other):
        g = _zgcd(self.int_coeffs(), other.int_coeffs())
        return UPoly.from_ints(g)

    def squarefree_part(self):
        if self.is_zero():
            raise ZeroFormError("squarefree part of the zero polynomial")
        return UPoly.from_ints(_zsquarefree(self.int_coeffs()))

    def is_squarefree(self):
        if self.is_zero():
            raise ZeroFormError("squarefree test of the zero polynomial")
        a = self.int_coeffs()
        return len(_zgcd(a, _zderiv(a))) <= 1

    def sturm_sequence(self):
        return [UPoly.from_ints(p) for p in _zsturm_chain(_zsquarefree(self.int_coeffs()))]


def sturm_count(p: UPoly, a=-INF, b=INF) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (a, b]."""
    if p.is_zero():
        raise DegenerateInputError("Sturm count of the zero polynomial")
    if not a < b:
        raise InputError(f"empty interval ({a}, {b}]")
    chain = _zsturm_chain(_zsquarefree(p.int_coeffs()))
    return _variations(chain, a) - _variations(chain, b)


def _root_bound(a):
    lc = abs(a[-1])
    m = max(abs(v) for v in a[:-1]) if len(a) > 1 else 0
    return Fraction(lc + m, lc) + 1


def _split_point(sq, lo, hi):
    for num, den in ((1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11)):
        m = lo + (hi - lo) * Fraction(num, den)
        if _zsign_at(sq, m) != 0:
            return m
    k = 13
    while True:
        m = lo + (hi - lo) * Fraction(1, k)
        if _zsign_at(sq, m) != 0:
            return m
        k += 2


def _isolate_chain(chain, lo, hi):
    sq = chain[0]
    out = []
    stack = [(lo, hi, _variations(chain, lo) - _variations(chain, hi))]
    while stack:
        l, h, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append((l, h))
            continue
        m = _split_point(sq, l, h)
        cl = _variations(chain, l) - _variations(chain, m)
        stack.append((m, h, c - cl))
        stack.append((l, m, cl))
    out.sort()
    return out


def isolate_real_roots(p: UPoly, a=-INF, b=INF):
    """Disjoint rational intervals (lo, hi], one per distinct root in (a, b].

    Interval endpoints produced by bisection are never roots.
    """
    if p.is_zero():
        raise DegenerateInputError("root isolation of the zero polynomial")
    sq = _zsquarefree(p.int_coeffs())
    chain = _zsturm_chain(sq)
    if len(sq) <= 1:
        return []
    bound = _root_bound(sq)
    lo = -bound if a == -INF else as_rat(a)
    hi = bound if b == INF else as_rat(b)
    if a != -INF and b != INF and not lo < hi:
        raise InputError(f"empty interval ({a}, {b}]")
    return _isolate_chain(chain, lo, hi)


def gap_points(p: UPoly, a, b):
    """Rational points, one in each gap between consecutive roots of ``p``.

    The list starts with ``a`` and ends with ``b``; the interior points lie
    strictly between consecutive distinct roots in (a, b).
    """
    pts = [as_rat(a)]
    ivs = isolate_real_roots(p, a, b)
    for lo, hi in ivs[:-1]:
        pts.append(hi)
    pts.append(as_rat(b))
    return pts, ivs


# ---------------------------------------------------------------------------
# BinForm
# ---------------------------------------------------------------------------

class BinForm:
    """Binary form ``sum coeffs[i] * s0^(degree-i) * s1^i``."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs):
        coeffs = tuple(as_rat(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise InputError(f"binary form of degree {degree} needs {degree + 1} coefficients")
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def from_ints(cls, coeffs):
        obj = cls.__new__(cls)
        obj.degree = len(coeffs) - 1
        obj.coeffs = tuple(Fraction(c) for c in coeffs)
        return obj

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BinForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BinForm({self.degree}, {[str(c) for c in self.coeffs]})"

    def __call__(self, s0, s1):
        d = self.degree
        return sum(c * s0 ** (d - i) * s1 ** i for i, c in enumerate(self.coeffs))

    def _ints(self):
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [int(c * den) for c in self.coeffs]

    def dehomogenize(self) -> UPoly:
        """The polynomial f(x, 1) in x = s0 (coefficients low degree first)."""
        return UPoly(tuple(reversed(self.coeffs)))


def _binform_ints(f):
    if isinstance(f, BinForm):
        return f._ints()
    return list(f)


def _generic_sylvester_det(p_coeffs, q_coeffs):
    """Determinant of the Sylvester matrix over any commutative ring.

    ``p_coeffs``/``q_coeffs`` are descending coefficient lists whose length
    fixes the formal degree.  Division-free Laplace expansion over column
    subsets; fine for the small sizes used here.
    """
    m = len(p_coeffs) - 1
    n = len(q_coeffs) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append({i + j: c for j, c in enumerate(p_coeffs) if not _is_zero(c)})
    for i in range(m):
        rows.append({i + j: c for j, c in enumerate(q_coeffs) if not _is_zero(c)})
    dp = {0: None}
    for r in range(size):
        new = {}
        for mask, val in dp.items():
            for col, entry in rows[r].items():
                bit = 1 << col
                if mask & bit:
                    continue
                inv = bin(mask >> (col + 1)).count("1")
                term = entry if val is None else val * entry
                if inv % 2:
                    term = -term
                key = mask | bit
                if key in new:
                    new[key] = new[key] + term
                else:
                    new[key] = term
        dp = new
    full = (1 << size) - 1
    return dp.get(full, 0)


def _is_zero(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


@lru_cache(maxsize=None)
def generic_discriminant(d: int) -> "MPoly":
    """Discriminant of the generic binary form of degree ``d`` as an MPoly.

    Variables c0..cd are the coefficients of s0^d, s0^(d-1) s1, ..., s1^d.
    Normalized so that the quadratic case is c1^2 - 4 c0 c2.
    """
    if d < 2:
        raise InputError("discriminant needs degree >= 2")
    cs = [MPoly.var(i, d + 1) for i in range(d + 1)]
    f = cs
    fp = [cs[i] * (d - i) for i in range(d)]
    res = _generic_sylvester_det(f, fp)
    out = {}
    for e, c in res.terms.items():
        if e[0] == 0:
            raise ArithmeticError("generic discriminant not divisible by c0")
        out[(e[0] - 1,) + e[1:]] = c
    disc = MPoly(d + 1, out)
    if (d * (d - 1) // 2) % 2:
        disc = -disc
    return disc


@lru_cache(maxsize=None)
def _generic_disc_int_terms(d):
    return [(int(c), e) for e, c in generic_discriminant(d).terms.items()]


@lru_cache(maxsize=None)
def generic_resultant(m: int, n: int) -> "MPoly":
    """Resultant of generic binary forms of degrees m and n.

    Variables a0..am (coefficients of the first form, s0^m first) followed by
    b0..bn.  Equals the Sylvester determinant.
    """
    vs = [MPoly.var(i, m + n + 2) for i in range(m + n + 2)]
    return _generic_sylvester_det(vs[: m + 1], vs[m + 1:])


def _eval_int_terms(terms, vals):
    total = 0
    cache = {}
    for c, e in terms:
        t = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                pw = cache.get(key)
                if pw is None:
                    pw = vals[i] ** k
                    cache[key] = pw
                t *= pw
                if not t:
                    break
        total += t
    return total


def _disc_int(c):
    """Discriminant of an integer binary form given by its coefficient list."""
    d = len(c) - 1
    if d <= 6:
        return _eval_int_terms(_generic_disc_int_terms(d), c)
    if c[0] == 0:
        if c[-1] != 0:
            return _disc_int(c[::-1])
        # unimodular shift making the s0^d coefficient nonzero
        return _disc_int(_shift_binform(c))
    f = c
    fp = [c[i] * (d - i) for i in range(d)]
    size = 2 * d - 1
    mat = []
    for i in range(d - 1):
        mat.append([0] * i + f + [0] * (size - i - len(f)))
    for i in range(d):
        mat.append([0] * i + fp + [0] * (size - i - len(fp)))
    res = _zdet(mat)
    q, r = divmod(res, c[0])
    assert r == 0
    return -q if (d * (d - 1) // 2) % 2 else q


def _shift_binform(c):
    """Coefficients of f(s0, s1 + k s0) for the least k >= 1 with f(1, k) != 0.

    The substitution is unimodular, so the discriminant is unchanged.
    """
    d = len(c) - 1
    for k in range(1, d + 2):
        out = [0] * (d + 1)
        # f = sum c_i s0^(d-i) s1^i and (s1 + k s0)^i = sum_j C(i, j) k^(i-j) s0^(i-j) s1^j
        for i, ci in enumerate(c):
            if ci:
                for j in range(i + 1):
                    out[j] += ci * math.comb(i, j) * k ** (i - j)
        if out[0]:
            return out
    raise ZeroFormError("the zero form has no discriminant")


def discriminant(f):
    """Discriminant of a binary form; zero iff there is a repeated projective root.

    Accepts a :class:`BinForm` (returns a Fraction) or a sequence of
    coefficients in any commutative ring with ``+``/``*`` (MPoly, UPoly),
    for which the generic formula is evaluated (degree <= 6).
    """
    if isinstance(f, BinForm):
        if f.degree < 2:
            raise InputError("discriminant needs degree >= 2")
        if f.is_zero():
            raise ZeroFormError("discriminant of the zero form")
        den = 1
        for c in f.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in f.coeffs]
        return Fraction(_disc_int(ints), den ** (2 * f.degree - 2))
    coeffs = list(f)
    return generic_discriminant(len(coeffs) - 1).eval_ring(coeffs)


def resultant_binforms(f, g):
    """Resultant of two binary forms (Sylvester determinant): Fraction."""
    a = [as_rat(c) for c in f.coeffs]
    b = [as_rat(c) for c in g.coeffs]
    da = 1
    for c in a + b:
        da = da * c.denominator // math.gcd(da, c.denominator)
    ai = [int(c * da) for c in a]
    bi = [int(c * da) for c in b]
    m, n = len(ai) - 1, len(bi) - 1
    return Fraction(_zres(ai, bi), da ** (m + n))


def _zres(a, b):
    """Sylvester resultant of descending integer coefficient lists."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return 1
    mat = []
    for i in range(n):
        mat.append([0] * i + list(a) + [0] * (size - i - len(a)))
    for i in range(m):
        mat.append([0] * i + list(b) + [0] * (size - i - len(b)))
    return _zdet(mat)


def _binform_sqfree_int(c):
    """Squarefree test for an integer coefficient list (nonzero form)."""
    d = len(c) - 1
    lead_zeros = 0
    while lead_zeros <= d and c[lead_zeros] == 0:
        lead_zeros += 1
    if lead_zeros >= 2:
        return False
    u = _trim(list(reversed(c)))
    if len(u) <= 2:
        return True
    return len(_zgcd(u, _zderiv(u))) <= 1


def _binform_real_roots_int(c):
    """Distinct real projective roots of a nonzero integer binary form."""
    at_inf = 1 if c[0] == 0 else 0
    u = _trim(list(reversed(c)))
    if len(u) <= 1:
        return at_inf
    sq = _zsquarefree(u)
    if len(sq) <= 1:
        return at_inf
    chain = _zsturm_chain(sq)
    return at_inf + _variations(chain, -INF) - _variations(chain, INF)


def is_squarefree(f: BinForm) -> bool:
    if f.is_zero():
        raise ZeroFormError("squarefree test of the zero form")
    return _binform_sqfree_int(f._ints())


def squarefree_part(p: UPoly) -> UPoly:
    return p.squarefree_part()


def real_projective_roots(f: BinForm) -> int:
    """Number of distinct real points [s0:s1] with f(s0, s1) = 0.

    The point s1 = 0 is a root exactly when the s0^d coefficient vanishes.
    """
    if f.is_zero():
        raise ZeroFormError("real roots of the zero form")
    return _binform_real_roots_int(f._ints())


# ---------------------------------------------------------------------------
# MPoly
# ---------------------------------------------------------------------------

class MPoly:
    """Sparse multivariate polynomial over Q in variables x0..x{nvars-1}."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise InputError(f"exponent {e} has wrong length for {nvars} variables")
                c = as_rat(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c, nvars):
        c = as_rat(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def parse(cls, text, nvars=None):
        return parse_poly(text, nvars)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise InputError("variable count mismatch")
            return other
        return MPoly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rat(other)
            if not c:
                return MPoly._raw(self.nvars, {})
            return MPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise InputError("negative power")
        out = MPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MPoly({self.nvars}, {self})"

    def __str__(self):
        return self.to_string()

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def eval(self, point):
        if len(point) != self.nvars:
            raise InputError(f"expected {self.nvars} coordinates, got {len(point)}")
        pt = [as_rat(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def eval_ring(self, values, zero=None):
        """Evaluate at ring elements (MPoly, UPoly, ...) supporting + and *."""
        if len(values) != self.nvars:
            raise InputError(f"expected {self.nvars} values, got {len(values)}")
        cache = {}
        total = zero
        for e, c in self.terms.items():
            t = None
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    t = cache[key] if t is None else t * cache[key]
            t = c if t is None else t * c
            total = t if total is None else total + t
        return 0 if total is None else total

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly._raw(self.nvars, out)

    def coeffs_in(self, i):
        """Map power of x_i -> coefficient MPoly (x_i removed, same nvars)."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: MPoly._raw(self.nvars, t) for k, t in out.items()}

    def integer_primitive(self):
        """Scale to coprime integer coefficients with positive leading term."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = math.gcd(*ints.values())
        lead = ints[max(ints)]
        if lead < 0:
            g = -g
        return MPoly._raw(self.nvars, {e: Fraction(v // g) for e, v in ints.items()})

    def int_terms(self):
        """List of (int coefficient, exponent) after clearing denominators."""
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [(int(c * den), e) for e, c in self.terms.items()]

    def compose_linear(self, matrix):
        """Pull back along y -> y * matrix: returns an MPoly in len(matrix) variables.

        ``matrix`` is k x nvars; x_i = sum_j y_j * matrix[j][i].
        """
        k = len(matrix)
        if any(len(r) != self.nvars for r in matrix):
            raise InputError("matrix width must equal the variable count")
        forms = [
            MPoly._raw(k, {tuple(1 if r == j else 0 for r in range(k)): as_rat(matrix[j][i])
                           for j in range(k) if matrix[j][i]})
            for i in range(self.nvars)
        ]
        total = MPoly._raw(k, {})
        cache = {}
        for e, c in self.terms.items():
            t = MPoly.constant(c, k)
            for i, p in enumerate(e):
                if p:
                    if (i, p) not in cache:
                        cache[(i, p)] = forms[i] ** p
                    t = t * cache[(i, p)]
            total = total + t
        return total

    def homogenize(self, h):
        """Multiply each term by x_h to the power needed for homogeneity."""
        D = self.degree()
        out = {}
        for e, c in self.terms.items():
            if e[h]:
                raise InputError("homogenizing variable already occurs")
            ne = list(e)
            ne[h] = D - sum(e)
            out[tuple(ne)] = c
        return MPoly._raw(self.nvars, out)


def resultant(p: MPoly, q: MPoly, var: int) -> MPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to x_var."""
    m, n = p.degree_in(var), q.degree_in(var)
    if p.is_zero() or q.is_zero():
        raise DegenerateInputError("resultant with the zero polynomial")
    if m <= 0 and n <= 0:
        raise DegenerateInputError("both polynomials are constant in the variable")
    pc = p.coeffs_in(var)
    qc = q.coeffs_in(var)
    zero = MPoly._raw(p.nvars, {})
    a = [pc.get(i, zero) for i in range(m, -1, -1)]
    b = [qc.get(i, zero) for i in range(n, -1, -1)]
    out = _generic_sylvester_det(a, b)
    if isinstance(out, int):
        return MPoly.constant(out, p.nvars)
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(x\d+)|(\d+)|(.))")


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("var", int(m.group(1)[1:]), start))
        elif m.group(2):
            toks.append(("int", int(m.group(2)), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append((ch, None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, nvars=None) -> MPoly:
    """Parse the polynomial text grammar (x0.., integers, + - * ^, parentheses)."""
    toks = _tokenize(text)
    maxvar = max((t[1] for t in toks if t[0] == "var"), default=-1)
    if nvars is None:
        nvars = maxvar + 1
    elif maxvar >= nvars:
        pos = next(t[2] for t in toks if t[0] == "var" and t[1] == maxvar)
        raise ParseError(f"variable x{maxvar} out of range for {nvars} variables", pos)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None):
        nonlocal i
        t = toks[i]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[0]!r}", t[2])
        i += 1
        return t

    def expr():
        if peek()[0] in "+-":
            sign = take()[0]
            val = term()
            if sign == "-":
                val = -val
        else:
            val = term()
        while peek()[0] in ("+", "-"):
            op = take()[0]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = power()
        while peek()[0] == "*":
            take()
            val = val * power()
        if peek()[0] in ("var", "int", "("):
            raise ParseError("implicit multiplication is not allowed", peek()[2])
        return val

    def power():
        base = atom()
        if peek()[0] == "^":
            take()
            t = take()
            if t[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", t[2])
            base = base ** t[1]
        return base

    def atom():
        t = peek()
        if t[0] == "var":
            take()
            return MPoly.var(t[1], nvars)
        if t[0] == "int":
            take()
            return MPoly.constant(t[1], nvars)
        if t[0] == "(":
            take()
            v = expr()
            take(")")
            return v
        if t[0] == "-":
            take()
            return -atom()
        raise ParseError(f"unexpected token {t[0]!r}", t[2])

    if toks[0][0] == "end":
        raise ParseError("empty polynomial", 0)
    out = expr()
    if peek()[0] != "end":
        raise ParseError(f"unexpected token {peek()[0]!r}", peek()[2])
    return out


def pluecker_index(n, k):
    """Lexicographic list of k-subsets of range(n) (Pluecker index order)."""
    return list(combinations(range(n), k))
