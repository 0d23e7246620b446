"""Exact classification of real linear spaces against a variety.

A linear space V is *avoidant* if it meets X transversally and in no real
point, *unavoidant* if transversal with ``r >= 1`` real points, *non-transverse*
if the section is singular, and *contained* if the section is everything.

Walls: along a one-parameter family of linear spaces the verdict can only
change where an exact discriminant vanishes.  ``wall_polynomial`` and its
hyperplane analogues compute that univariate polynomial, isolate its roots
in (0, 1), and classify one rational point in every gap between roots.
"""
from __future__ import annotations

import enum
import math
from itertools import combinations
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .grassmann import LinSpace, Segment, kernel_basis, make_rng, segment
from .poly import (BinForm, DegenerateInputError, InputError, MPoly, UPoly, ZeroFormError, _binform_real_roots_int,
                   _binform_sqfree_int, _disc_int, _trim, _variations, _zadd, _zdet, _zderiv,
                   _zdivexact, _zgcd, _zinterpolate, _zmul, _zprimitive, _zsign_at, _zsquarefree,
                   _zsturm_chain, as_rat, generic_resultant, isolate_unit_interval, parse_poly,
                   sturm_count)


class Verdict(str, enum.Enum):
    AVOIDANT = "Avoidant"
    UNAVOIDANT = "Unavoidant"
    NONTRANSVERSE = "NonTransverse"
    CONTAINED = "Contained"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    real_points: int | None = None
    witness: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.verdict == Verdict.UNAVOIDANT:
            if self.real_points is None or self.real_points < 1:
                raise ValueError("Unavoidant needs real_points >= 1")
        elif self.verdict == Verdict.AVOIDANT:
            object.__setattr__(self, "real_points", 0)
        else:
            object.__setattr__(self, "real_points", None)

    @property
    def transverse(self):
        return self.verdict in (Verdict.AVOIDANT, Verdict.UNAVOIDANT)

    @property
    def label(self):
        return (self.verdict.value, self.real_points)

    def to_json(self):
        out = {"verdict": self.verdict.value}
        if self.verdict == Verdict.UNAVOIDANT:
            out["real_points"] = self.real_points
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(Verdict(obj["verdict"]), obj.get("real_points"), obj.get("witness"))


AVOIDANT = Classification(Verdict.AVOIDANT)
NONTRANSVERSE = Classification(Verdict.NONTRANSVERSE)
CONTAINED = Classification(Verdict.CONTAINED)


def unavoidant(r):
    return Classification(Verdict.UNAVOIDANT, r)


HYPERSURFACE = "hypersurface"
CI_CURVE = "ci_curve"


class VarietySpec:
    """A projective variety in P^(n-1) given by exact homogeneous equations.

    ``kind`` is ``"hypersurface"`` (one equation) or ``"ci_curve"`` (two
    equations in four variables).  A curve may carry an optional rational
    parametrization: n integer coefficient lists of binary forms of a common
    degree (s0^e first), whose values trace the curve.
    """

    def __init__(self, n, kind, equations, parametrization=None, name=""):
        eqs = tuple(parse_poly(e, n) if isinstance(e, str) else e for e in equations)
        if kind not in (HYPERSURFACE, CI_CURVE):
            raise InputError(f"unknown variety kind {kind!r}")
        for e in eqs:
            if e.nvars != n:
                raise InputError("equation has the wrong number of variables")
            if e.is_zero() or not e.is_homogeneous():
                raise InputError("equations must be nonzero and homogeneous")
            if e.degree() < 1:
                raise InputError("equations must have positive degree")
        if kind == HYPERSURFACE and len(eqs) != 1:
            raise InputError("a hypersurface has exactly one equation")
        if kind == CI_CURVE and (len(eqs) != 2 or n != 4):
            raise InputError("a complete-intersection curve needs 2 equations in 4 variables")
        self.n = n
        self.kind = kind
        self.equations = eqs
        self.name = name
        self.parametrization = None
        if parametrization is not None:
            par = tuple(tuple(int(c) for c in g) for g in parametrization)
            if len(par) != n or len({len(g) for g in par}) != 1:
                raise InputError("parametrization needs n forms of equal degree")
            self.parametrization = par
        self._int_terms = tuple(
            tuple((c, e) for c, e in eq.integer_primitive().int_terms()) for eq in eqs
        )

    @property
    def degrees(self):
        return tuple(e.degree() for e in self.equations)

    @property
    def degree(self):
        return math.prod(self.degrees)

    def int_terms(self, i=0):
        return self._int_terms[i]

    def to_json(self):
        obj = {"ambient_dim": self.n, "kind": self.kind,
               "equations": [e.to_string() for e in self.equations]}
        if self.name:
            obj["name"] = self.name
        if self.parametrization is not None:
            obj["parametrization"] = [list(g) for g in self.parametrization]
        return obj

    @classmethod
    def from_json(cls, obj, ambient_dim=None):
        n = obj.get("ambient_dim", ambient_dim)
        if n is None:
            raise InputError("ambient_dim is required")
        return cls(int(n), obj.get("kind", HYPERSURFACE), obj["equations"],
                   obj.get("parametrization"), obj.get("name", ""))

    def __repr__(self):
        eqs = ", ".join(str(e) for e in self.equations)
        return f"VarietySpec(n={self.n}, kind={self.kind!r}, [{eqs}])"


# ---------------------------------------------------------------------------
# restriction kernels on integer data
# ---------------------------------------------------------------------------

def _binom_power(a, b, k):
    """Coefficients of (a s0 + b s1)^k, index = power of s1."""
    return [math.comb(k, j) * a ** (k - j) * b ** j for j in range(k + 1)]


def _restrict_int(terms, r0, r1, d):
    """Integer coefficients of F(s0 r0 + s1 r1) in the basis s0^d .. s1^d."""
    out = [0] * (d + 1)
    cache = {}
    for c, e in terms:
        poly = [c]
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                pw = cache.get(key)
                if pw is None:
                    pw = _binom_power(r0[i], r1[i], k)
                    cache[key] = pw
                nxt = [0] * (len(poly) + k)
                for x, px in enumerate(poly):
                    if px:
                        for y, qy in enumerate(pw):
                            nxt[x + y] += px * qy
                poly = nxt
        for j, v in enumerate(poly):
            out[j] += v
    return out


def _family_forms(terms, d, A, Dm):
    """Restriction of F to the rows A + t*Dm, as d+1 integer polynomials in t.

    Entry j is the coefficient of s0^(d-j) s1^j, a list indexed by powers of t.
    """
    def mul(p, q):
        out = [[] for _ in range(len(p) + len(q) - 1)]
        for x, px in enumerate(p):
            if not px:
                continue
            for y, qy in enumerate(q):
                if qy:
                    prod = _zmul(px, qy)
                    out[x + y] = _zadd(out[x + y], prod) if out[x + y] else prod
        return out

    lin = []
    for i in range(len(A[0])):
        lin.append([_trim([A[0][i], Dm[0][i]]), _trim([A[1][i], Dm[1][i]])])
    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = lin[i] if k == 1 else mul(power(i, k - 1), lin[i])
        return cache[key]

    out = [[] for _ in range(d + 1)]
    for c, e in terms:
        poly = [[c]]
        for i, k in enumerate(e):
            if k:
                poly = mul(poly, power(i, k))
        for j, v in enumerate(poly):
            if v:
                out[j] = _zadd(out[j], v) if out[j] else list(v)
    return out


def _eval_family(forms, num, den, deg):
    """Coefficients of the family at t = num/den, all scaled by den^deg (> 0)."""
    return [sum(cm * num ** m * den ** (deg - m) for m, cm in enumerate(c)) for c in forms]


def _classify_int_form(c):
    """Classify a binary-form section given by integer coefficients."""
    if not any(c):
        return CONTAINED
    d = len(c) - 1
    if d >= 2:
        if d <= 6:
            if _disc_int(c) == 0:
                return NONTRANSVERSE
        elif not _binform_sqfree_int(c):
            return NONTRANSVERSE
    r = _binform_real_roots_int(c)
    return AVOIDANT if r == 0 else unavoidant(r)


def _int_vec(v):
    den = 1
    for x in v:
        x = as_rat(x)
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(as_rat(x) * den) for x in v]
    g = math.gcd(*ints)
    return [x // g for x in ints] if g else ints


# ---------------------------------------------------------------------------
# public classification operations
# ---------------------------------------------------------------------------

def classify_point(X: VarietySpec, p) -> Classification:
    """Avoidant iff F(p) != 0; a point of X_R is unavoidant with one real point."""
    if X.kind != HYPERSURFACE:
        raise InputError("point classification needs a hypersurface")
    v = [as_rat(x) for x in p]
    if len(v) != X.n:
        raise InputError("point has the wrong number of coordinates")
    if not any(v):
        raise InputError("the zero vector is not a projective point")
    val = X.equations[0].eval(v)
    if val != 0:
        return Classification(Verdict.AVOIDANT, witness={"sign": 1 if val > 0 else -1})
    return unavoidant(1)


def point_sign(X: VarietySpec, p) -> int:
    v = _int_vec(p)
    val = sum(c * math.prod(x ** k for x, k in zip(v, e)) for c, e in X.int_terms())
    return (val > 0) - (val < 0)


def restrict_to_line(F: MPoly, L: LinSpace) -> BinForm:
    """Binary form f(s0, s1) = F(s0 r0 + s1 r1) for the given rows of L."""
    if L.k != 2:
        raise InputError("restriction to a line needs a 2-row matrix")
    if not F.is_homogeneous():
        raise InputError("F must be homogeneous")
    d = F.degree()
    r0, r1 = L.matrix
    out = [Fraction(0)] * (d + 1)
    for e, c in F.terms.items():
        poly = [c]
        for i, k in enumerate(e):
            if k:
                pw = _binom_power(r0[i], r1[i], k)
                nxt = [Fraction(0)] * (len(poly) + k)
                for x, px in enumerate(poly):
                    for y, qy in enumerate(pw):
                        nxt[x + y] += px * qy
                poly = nxt
        for j, v in enumerate(poly):
            out[j] += v
    return BinForm(d, out)


def classify_line(X: VarietySpec, L: LinSpace) -> Classification:
    """Classify a line against a hypersurface via its restricted binary form."""
    if X.kind != HYPERSURFACE:
        raise InputError("line classification needs a hypersurface")
    if L.k != 2 or L.n != X.n:
        raise InputError("expected a line in the ambient space of X")
    r0, r1 = L.int_rows()
    return _classify_int_form(_restrict_int(X.int_terms(), r0, r1, X.degrees[0]))


def classify_line_witness(X: VarietySpec, L: LinSpace) -> Classification:
    """Like :func:`classify_line`, with the restricted form and discriminant attached."""
    c = classify_line(X, L)
    r0, r1 = L.int_rows()
    f = _restrict_int(X.int_terms(), r0, r1, X.degrees[0])
    w = {"restriction": [str(v) for v in f]}
    if any(f) and len(f) > 2:
        w["discriminant"] = str(_disc_int(f))
    return Classification(c.verdict, c.real_points, w)


def hyperplane_normal(H: LinSpace):
    """Integer normal vector u with u . h = 0 for every row h of H."""
    if H.k != H.n - 1:
        raise InputError("not a hyperplane")
    return tuple(_int_vec(kernel_basis(H.matrix)[0]))


def _pivot_kernel_rows(u, j):
    """Kernel basis u_j e_i - u_i e_j (i != j) of the linear form u."""
    n = len(u)
    rows = []
    for i in range(n):
        if i == j:
            continue
        r = [0] * n
        r[i] = u[j]
        r[j] = -u[i]
        rows.append(r)
    return rows


def _best_pivot(u):
    return max(range(len(u)), key=lambda i: abs(u[i]))


def hyperplane_from_normal(u) -> LinSpace:
    u = _int_vec(u)
    if not any(u):
        raise InputError("zero normal vector")
    return LinSpace(_pivot_kernel_rows(u, _best_pivot(u)), check=False)


def classify_dual_line(X: VarietySpec, u) -> Classification:
    """Classify the line {u . x = 0} in P^2 against a plane curve X."""
    if X.kind != HYPERSURFACE or X.n != 3:
        raise InputError("dual-line classification needs a plane curve")
    u = _int_vec(u)
    if not any(u):
        raise InputError("zero normal vector")
    r0, r1 = _pivot_kernel_rows(u, _best_pivot(u))
    return _classify_int_form(_restrict_int(X.int_terms(), r0, r1, X.degrees[0]))


_SINGULAR_CACHE = {}


def singular_points(C: VarietySpec):
    """Real singular points of a complete-intersection curve, exactly.

    Solves F1 = F2 = 0 together with the 2 x 2 minors of the Jacobian in each
    chart x_i = 1 by a lex Groebner basis (sympy).  Points are returned as
    tuples of sympy numbers; a positive-dimensional singular locus raises.
    """
    key = tuple(e.to_string() for e in C.equations)
    if key in _SINGULAR_CACHE:
        return _SINGULAR_CACHE[key]
    import sympy

    xs = sympy.symbols("x0:4")
    Fs = [sympy.sympify(e.to_string().replace("^", "**"), locals=dict(zip(map(str, xs), xs)))
          for e in C.equations]
    J = sympy.Matrix([[sympy.diff(F, v) for v in xs] for F in Fs])
    minors = [J[:, [i, j]].det() for i in range(4) for j in range(i + 1, 4)]
    pts = []
    for ch in range(4):
        fixed = [xs[c] for c in range(ch)]
        eqs = Fs + minors + [xs[ch] - 1] + fixed
        G = sympy.groebner(eqs, *xs, order="lex")
        if list(G) == [1]:
            continue
        if not G.is_zero_dimensional:
            raise DegenerateInputError("the curve is singular along a positive-dimensional set")
        for sol in sympy.solve(list(G), xs, dict=True):
            p = tuple(sympy.nsimplify(sol.get(v, 0)) for v in xs)
            if all(c.is_real for c in p):
                pts.append(p)
    _SINGULAR_CACHE[key] = tuple(pts)
    return _SINGULAR_CACHE[key]


def _through_singular_point(C, u):
    for p in singular_points(C):
        if all(c.is_Rational for c in p):
            if sum(int(a) * Fraction(int(c.p), int(c.q)) for a, c in zip(u, p)) == 0:
                return p
        else:
            import sympy

            if sympy.simplify(sum(int(a) * c for a, c in zip(u, p))) == 0:
                return p
    return None


def _param_section(par, u):
    e = len(par[0])
    return [sum(u[i] * par[i][j] for i in range(len(u))) for j in range(e)]


def _ternary_pullback_int(terms, rows, d):
    """Integer coefficients of F(y . rows) as {(a, b, c): coeff} (y0^a y1^b y2^c)."""
    nv = len(rows)
    forms = []
    for i in range(len(rows[0])):
        forms.append({tuple(int(r == j) for r in range(nv)): rows[j][i]
                      for j in range(nv) if rows[j][i]})
    out = {}
    cache = {}

    def mul(p, q):
        o = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                o[e] = o.get(e, 0) + c1 * c2
        return {e: c for e, c in o.items() if c}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            if k == 1:
                cache[key] = forms[i]
            else:
                cache[key] = mul(power(i, k - 1), forms[i])
        return cache[key]

    for c, e in terms:
        t = {(0,) * nv: c}
        for i, k in enumerate(e):
            if k:
                t = mul(t, power(i, k))
        for m, v in t.items():
            out[m] = out.get(m, 0) + v
    return {m: v for m, v in out.items() if v}


def _resultant_section(C, rows):
    """Binary form Res_{y2}(G1, G2) of the two pulled-back plane curves.

    Returns (coefficients of the binary form, deficient) where ``deficient``
    flags a drop of the leading y2-coefficients.
    """
    d1, d2 = C.degrees
    gs = [_ternary_pullback_int(C.int_terms(i), rows, d) for i, d in enumerate((d1, d2))]
    coeff_lists = []
    deficient = False
    for g, d in zip(gs, (d1, d2)):
        # coefficient of y2^j as a binary form of degree d - j in (y0, y1)
        cl = []
        for j in range(d, -1, -1):
            cl.append(MPoly(2, {(a, b): v for (a, b, c), v in g.items() if c == j}))
        if cl[0].is_zero():
            deficient = True
        coeff_lists.append(cl)
    if all(c.is_zero() for c in coeff_lists[0]) or all(c.is_zero() for c in coeff_lists[1]):
        return [0] * (d1 * d2 + 1), deficient
    res = generic_resultant(d1, d2).eval_ring(coeff_lists[0] + coeff_lists[1])
    D = d1 * d2
    if isinstance(res, int) or (isinstance(res, MPoly) and res.is_zero()):
        return [0] * (D + 1), deficient
    out = [0] * (D + 1)
    for (a, b), v in res.terms.items():
        if a + b != D:
            raise ArithmeticError("resultant is not homogeneous of Bezout degree")
        out[b] = int(v)
    return out, deficient


def _random_gl3(rng):
    while True:
        m = rng.integers(-3, 4, size=(3, 3))
        if round(np.linalg.det(m)) != 0:
            return [[int(x) for x in r] for r in m]


def classify_hyperplane_vs_curve(C: VarietySpec, H, route="auto", seed=0) -> Classification:
    """Classify a plane in P^3 against a complete-intersection space curve.

    ``H`` is a 3 x 4 LinSpace or a normal vector.  With ``route="param"`` (the
    default when the curve carries a parametrization) the plane section is the
    binary form sum u_i gamma_i(s); with ``route="resultant"`` both equations
    are pulled back to the plane, a seeded generic coordinate change is applied
    and the two plane curves are intersected by a resultant.
    """
    if C.kind != CI_CURVE:
        raise InputError("expected a complete-intersection curve")
    if isinstance(H, LinSpace):
        if H.k != 3 or H.n != 4:
            raise InputError("expected a plane in P^3")
        u = hyperplane_normal(H)
        rows = [list(r) for r in H.int_rows()]
    else:
        u = _int_vec(H)
        if len(u) != 4 or not any(u):
            raise InputError("expected a nonzero normal vector of length 4")
        rows = _pivot_kernel_rows(u, _best_pivot(u))
    use_param = route == "param" or (route == "auto" and C.parametrization is not None)
    if use_param:
        if C.parametrization is None:
            raise InputError("curve has no parametrization")
        # the parametrization hides singular points: a node is two real
        # parameters, an isolated real point a conjugate pair
        p = _through_singular_point(C, u)
        if p is not None:
            return Classification(Verdict.NONTRANSVERSE,
                                  witness={"singular_point": [str(c) for c in p]})
        return _classify_int_form(_param_section(C.parametrization, u))
    rng = make_rng(seed, "hyperplane_vs_curve")
    last = None
    for attempt in range(3):
        A = [[int(i == j) for j in range(3)] for i in range(3)] if attempt == 0 else _random_gl3(rng)
        new_rows = [[sum(A[i][j] * rows[j][c] for j in range(3)) for c in range(4)] for i in range(3)]
        R, deficient = _resultant_section(C, new_rows)
        if deficient:
            continue
        if not any(R):
            return Classification(Verdict.CONTAINED, witness={"resultant": "0"})
        last = _classify_int_form(R)
        if last.transverse:
            return last
    return Classification(Verdict.NONTRANSVERSE, witness={"retries": 2})


# ---------------------------------------------------------------------------
# walls
# ---------------------------------------------------------------------------

class SegmentInDiscriminant(ZeroFormError):
    """The whole family is non-transverse; perturb an endpoint and retry."""

    resample_hint = "perturb one endpoint by a small random rational offset"


@dataclass
class WallPolynomial:
    """Discriminant of a one-parameter family of sections, restricted to [0, 1].

    ``intervals`` isolate the distinct real roots in (0, 1); ``gap_labels``
    holds the label classified at ``gap_params`` (t = 0, one point strictly
    between consecutive roots, t = 1).  A root is *confirmed* when the labels
    on its two sides differ.
    """

    g: UPoly
    provenance: dict
    intervals: list
    gap_params: list
    gap_labels: list
    rank_drop: bool = False

    @property
    def roots_in_unit_interval(self):
        return len(self.intervals)

    @property
    def confirmed_roots(self):
        return [iv for iv, a, b in zip(self.intervals, self.gap_labels, self.gap_labels[1:]) if a != b]

    @property
    def first_confirmed(self):
        for i, (a, b) in enumerate(zip(self.gap_labels, self.gap_labels[1:])):
            if a != b:
                return i
        return None

    @property
    def has_multiple_root(self):
        """Whether some root in (0, 1) is multiple.

        A multiple root means the path touches the wall or crosses it where
        two sheets meet; label equality on both sides then proves nothing.
        """
        if not self.intervals:
            return False
        g = [int(c) for c in self.g.coeffs]
        h = _zgcd(g, _zderiv(g))
        return len(h) > 1 and bool(isolate_unit_interval(h))

    def stays_in_region(self, label=None):
        """All gap labels equal (to ``label`` if given) and every crossing is simple."""
        if self.rank_drop:
            return False
        ref = self.gap_labels[0] if label is None else label
        if any(lab != ref for lab in self.gap_labels):
            return False
        return not self.has_multiple_root

    @property
    def passable(self):
        """True when the whole segment stays in one transverse region."""
        return self.gap_labels[0][0] in (Verdict.AVOIDANT.value, Verdict.UNAVOIDANT.value) and \
            self.stays_in_region()

    def certificate(self):
        return {
            "g": [str(c) for c in self.g.coeffs],
            "roots": [[str(a), str(b)] for a, b in self.intervals],
            "gap_params": [str(t) for t in self.gap_params],
            "gap_labels": [list(lab) for lab in self.gap_labels],
            "rank_drop": self.rank_drop,
            **self.provenance,
        }


def _family_values(eval_int, D):
    return [eval_int(t) for t in range(D + 1)]


def _wall_from_values(values, divisor=None):
    coeffs, _ = _zinterpolate(values)
    if not coeffs:
        raise SegmentInDiscriminant("wall polynomial vanishes identically")
    if divisor is not None:
        coeffs = _zdivexact(_zprimitive(coeffs), divisor)
    return _zprimitive(coeffs)


def _unit_interval_analysis(g, label_at):
    """Isolate roots of g in (0, 1) and classify each gap."""
    ivs = isolate_unit_interval(g)
    params = [Fraction(0)] + [hi for _, hi in ivs[:-1]] + [Fraction(1)]
    labels = [label_at(t) for t in params]
    return ivs, params, labels


def family_discriminant(X: VarietySpec, A, Dm, forms=None):
    """Primitive integer coefficients of g(t) = disc F|(A + t Dm) for a 2-row family.

    Computed by exact interpolation at t = 0..d(2d-2).
    """
    d = X.degrees[0]
    if d == 1:
        return [1]
    if forms is None:
        forms = _family_forms(X.int_terms(), d, A, Dm)
    vals = [_disc_int(_eval_family(forms, t, 1, d)) for t in range(d * (2 * d - 2) + 1)]
    return _wall_from_values(vals)


def refine_first_root(g, lo, hi):
    """Shrink an isolating interval of g so that its left end is positive."""
    p = UPoly.from_ints(g)
    while lo <= 0:
        m = (lo + hi) / 2
        if p(m) == 0:
            m = lo + (hi - lo) / 3
        if sturm_count(p, lo, m) > 0:
            hi = m
        else:
            lo = m
    return lo, hi


def wall_polynomial(X: VarietySpec, L0: LinSpace, L1: LinSpace, seg: Segment | None = None,
                    label_fn=None) -> WallPolynomial:
    """Discriminant of F restricted to the segment family from L0 to L1.

    The segment is taken in a shared affine chart (identity in a common pivot
    set), so the family is full rank for every t.  ``label_fn`` overrides the
    classification label used at gap points (used for finer labels).
    """
    if X.kind != HYPERSURFACE:
        raise InputError("wall polynomial needs a hypersurface")
    if seg is None:
        seg = segment(L0, L1)
    A, Dm = seg.int_family()
    d = X.degrees[0]
    forms = _family_forms(X.int_terms(), d, A, Dm)

    def form_at(num, den):
        return _eval_family(forms, num, den, d)

    g = family_discriminant(X, A, Dm, forms)

    def label_at(t):
        f = form_at(t.numerator, t.denominator)
        if label_fn is not None:
            return label_fn(f)
        return _classify_int_form(f).label

    rank_drop = False if seg.pivots is not None else _segment_rank_drop(seg)
    ivs, params, labels = _unit_interval_analysis(g, label_at)
    return WallPolynomial(UPoly.from_ints(g), {"kind": "line_section", "degree": d},
                          ivs, params, labels, rank_drop)


def _segment_rank_drop(seg: Segment):
    """Whether the matrix family loses rank somewhere in [0, 1]."""
    A, Dm = seg.int_family()
    k, n = len(A), len(A[0])
    g = None
    for I in combinations(range(n), k):
        vals = [_zdet([[A[i][c] + t * Dm[i][c] for c in I] for i in range(k)]) for t in range(k + 1)]
        coeffs, _ = _zinterpolate(vals)
        if not coeffs:
            continue
        g = coeffs if g is None else _zgcd(g, coeffs)
        if len(g) <= 1:
            return False
    if g is None:
        return True
    if _zsign_at(g, Fraction(0)) == 0:
        return True
    chain = _zsturm_chain(_zsquarefree(g))
    return _variations(chain, Fraction(0)) - _variations(chain, Fraction(1)) > 0


def dual_wall_polynomial(X: VarietySpec, u0, u1, label_fn=None) -> WallPolynomial:
    """Wall along the pencil of lines {(u0 + t (u1 - u0)) . x = 0} in the plane.

    The restriction of F to the pivot kernel basis has discriminant equal to
    u_j(t)^(d(d-1)) times the dual form at u(t); the pivot power is divided out
    exactly, leaving a polynomial of degree d(d-1) in t.
    """
    if X.kind != HYPERSURFACE or X.n != 3:
        raise InputError("dual walls need a plane curve")
    a = _int_vec(u0)
    b = _int_vec(u1)
    diff = [y - x for x, y in zip(a, b)]
    d = X.degrees[0]
    terms = X.int_terms()
    j = max(range(3), key=lambda i: min(abs(a[i]) / max(map(abs, a)), abs(b[i]) / max(map(abs, b))))

    def u_at(num, den):
        return [den * x + num * y for x, y in zip(a, diff)]

    # pivot kernel rows are linear in t: rows(a) + t rows(diff)
    R0 = _pivot_kernel_rows(a, j)
    R1 = _pivot_kernel_rows(diff, j)
    forms = _family_forms(terms, d, R0, R1)

    if d == 1:
        g = [1]
    else:
        D = d * (2 * d - 2)
        vals = [_disc_int(_eval_family(forms, t, 1, d)) for t in range(D + 1)]
        piv = [a[j]] if diff[j] == 0 else [a[j], diff[j]]
        divisor = [1]
        for _ in range(d * (d - 1)):
            divisor = _zmul(divisor, piv)
        coeffs, _ = _zinterpolate(vals)
        if not coeffs:
            raise SegmentInDiscriminant("dual wall vanishes identically")
        g = _zprimitive(_zdivexact(_zprimitive(coeffs), _zprimitive(divisor)))

    def label_at(t):
        u = u_at(t.numerator, t.denominator)
        jj = j if u[j] != 0 else _best_pivot(u)
        r0, r1 = _pivot_kernel_rows(u, jj)
        f = _restrict_int(terms, r0, r1, d)
        if label_fn is not None:
            return label_fn(f)
        return _classify_int_form(f).label

    ivs, params, labels = _unit_interval_analysis(g, label_at)
    return WallPolynomial(UPoly.from_ints(g), {"kind": "dual_plane", "pivot": j}, ivs, params,
                          labels, rank_drop=False)


def curve_hyperplane_wall(C: VarietySpec, u0, u1, route="auto", seed=0) -> WallPolynomial:
    """Wall along the pencil of planes u0 + t (u1 - u0) against a space curve.

    With a parametrization the section is the binary form sum u_i gamma_i and
    the wall is its discriminant, of degree 2e - 2 in t.  Without one, the
    discriminant of the elimination resultant is interpolated (slow).
    """
    a = _int_vec(u0)
    b = _int_vec(u1)
    diff = [y - x for x, y in zip(a, b)]

    def u_at(num, den):
        return [den * x + num * y for x, y in zip(a, diff)]

    use_param = route == "param" or (route == "auto" and C.parametrization is not None)
    if use_param:
        par = C.parametrization
        e = len(par[0]) - 1
        vals = [_disc_int(_param_section(par, u_at(t, 1))) for t in range(2 * e - 2 + 1)]
        g = _wall_from_values(vals)
        prov = {"kind": "curve_param", "section_degree": e}

        def label_at(t):
            return _classify_int_form(_param_section(par, u_at(t.numerator, t.denominator))).label
    else:
        D1 = C.degrees[0] * C.degrees[1]
        j = _best_pivot(a)
        deg_t = (2 * D1 - 2) * 2 * D1
        vals = []
        for t in range(deg_t + 1):
            u = u_at(t, 1)
            rows = _pivot_kernel_rows(u, j)
            R, _ = _resultant_section(C, rows)
            vals.append(_disc_int(R) if any(R) else 0)
        g = _wall_from_values(vals)
        prov = {"kind": "curve_resultant"}

        def label_at(t):
            return classify_hyperplane_vs_curve(C, u_at(t.numerator, t.denominator),
                                                route="resultant", seed=seed).label
    ivs, params, labels = _unit_interval_analysis(g, label_at)
    return WallPolynomial(UPoly.from_ints(g), prov, ivs, params, labels, rank_drop=False)


def set_operations_check(F: MPoly, G: MPoly, L: LinSpace) -> Classification:
    """Classification of the union V(F G) against L, checking the shared-root precondition."""
    f = restrict_to_line(F, L)
    h = restrict_to_line(G, L)
    fi = _int_vec(f.coeffs)
    hi = _int_vec(h.coeffs)
    shared = False
    if not any(fi) or not any(hi):
        shared = True
    else:
        if fi[0] == 0 and hi[0] == 0:
            shared = True
        else:
            gu = _zgcd(_trim(list(reversed(fi))), _trim(list(reversed(hi))))
            shared = len(gu) > 1
    prod = F * G
    X = VarietySpec(F.nvars, HYPERSURFACE, [prod])
    c = classify_line(X, L)
    if shared and c.verdict != Verdict.CONTAINED:
        return Classification(Verdict.NONTRANSVERSE, witness={"shared_root": True})
    return c
