"""Symbolic discriminantal forms: dual plane curves, Chow forms of space curves,
degree formulas and two named Pluecker-coordinate forms.

Dual curves come from two iterated resultants.  In the chart x1 = 1 the line
u . x = 0 is solved for x2, which eliminates x2 against F; the discriminant in
x0 (a resultant with the derivative) then detects tangency.  The elimination
runs in a seeded random coordinate frame and spurious factors are removed
afterwards with exact tangency tests.

Chow forms of complete-intersection curves in P^3 are interpolated: the value
at a line L is Res(F1|L, F2|L), and the form is solved for in the degree
d1*d2 Pluecker monomials that avoid p03*p12 (the leading monomial of the
Pluecker quadric under grevlex p01 > p02 > ... > p23).  The linear system is
solved modulo primes and lifted by rational reconstruction, then checked
exactly on fresh lines.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy

from .classify import VarietySpec, Verdict, _restrict_int, classify_dual_line
from .grassmann import make_rng
from .poly import InputError, MPoly, UPoly, _zres, parse_poly, resultant


class EliminationError(RuntimeError):
    """Raised when an eliminated form fails its verification."""


# ---------------------------------------------------------------------------
# conversion helpers
# ---------------------------------------------------------------------------

def _to_sympy(p: MPoly, gens):
    q = p.integer_primitive()
    return sympy.Poly.from_dict({e: int(c) for e, c in q.terms.items()}, *gens)


def _from_sympy(P, nvars):
    return MPoly(nvars, {tuple(e): Fraction(int(c)) for e, c in P.terms()})


def _shrink(p: MPoly, keep):
    """Drop variables not in ``keep`` (they must not occur)."""
    out = {}
    for e, c in p.terms.items():
        if any(e[i] for i in range(p.nvars) if i not in keep):
            raise InputError("polynomial still depends on an eliminated variable")
        out[tuple(e[i] for i in keep)] = c
    return MPoly(len(keep), out)


def _upoly_int(p: MPoly, values):
    """Univariate integer polynomial p(values) where values are integer coefficient lists."""
    vals = [UPoly.from_ints(v) for v in values]
    r = p.eval_ring(vals, zero=UPoly())
    if not isinstance(r, UPoly):
        r = UPoly([r])
    return r


def _poly_mod(a: UPoly, m: UPoly):
    return a.divmod(m)[1]


def _random_gl(rng, n, h=3):
    while True:
        g = rng.integers(-h, h + 1, size=(n, n))
        if round(np.linalg.det(g)) != 0:
            return [[int(x) for x in r] for r in g]


def form_to_json(p: MPoly, variables, degree=None, provenance=None):
    terms = sorted(((list(e), str(c)) for e, c in p.terms.items()), reverse=True)
    return {"variables": list(variables), "terms": terms,
            "degree": p.degree() if degree is None else degree,
            "term_count": len(p.terms), "provenance": provenance or {}}


def form_from_json(obj):
    nv = len(obj["variables"])
    return MPoly(nv, {tuple(e): Fraction(c) for e, c in obj["terms"]})


# ---------------------------------------------------------------------------
# dual plane curves
# ---------------------------------------------------------------------------

@dataclass
class DualCurve:
    source: MPoly
    dual: MPoly
    degree: int
    monomial_count: int
    frame: list = field(default_factory=list)
    removed: list = field(default_factory=list)
    warning: str | None = None

    def to_json(self):
        prov = {"source": self.source.to_string(), "frame": self.frame,
                "removed_factors": self.removed, "construction": "iterated resultants"}
        if self.warning:
            prov["warning"] = self.warning
        return form_to_json(self.dual, ["u0", "u1", "u2"], self.degree, prov)


def _eliminate_dual(G: MPoly):
    """Res_x0(R1, dR1/dx0) with R1 = Res_x2(G(x0, 1, x2), u . x): an MPoly in u."""
    V = [MPoly.var(i, 5) for i in range(5)]   # x0, x2, u0, u1, u2
    G5 = G.eval_ring([V[0], MPoly.constant(1, 5), V[1]])
    line = V[2] * V[0] + V[3] + V[4] * V[1]
    R1 = resultant(G5, line, 1)
    R2 = resultant(R1, R1.diff(0), 0)
    return _shrink(R2, (2, 3, 4))


def _secant(F, rng, h=20, tries=50):
    """Random line x(s) = a s + b (as coefficient lists) meeting F in d distinct points."""
    d = F.degree()
    for _ in range(tries):
        a = [int(x) for x in rng.integers(-h, h + 1, size=3)]
        b = [int(x) for x in rng.integers(-h, h + 1, size=3)]
        xs = [[b[i], a[i]] for i in range(3)]
        f = _upoly_int(F, xs)
        if f.degree == d and f.is_squarefree():
            return xs, f
    raise EliminationError("could not find a transverse secant")


def _tangent_residues(F: MPoly, P: MPoly, rng, lines):
    """For random secants x(s), yield (F(x(s)), P(grad F(x(s)))) as UPolys."""
    grad = [F.diff(i) for i in range(3)]
    for _ in range(lines):
        xs, f = _secant(F, rng)
        gx = [_upoly_int(g, xs) for g in grad]
        yield xs, f, P.eval_ring(gx, zero=UPoly())


def _is_tangential(F, P, rng, lines=3):
    """True if P vanishes on tangent lines at points of most of a few random secants."""
    votes = sum(f.gcd(h).degree >= 1 for _, f, h in _tangent_residues(F, P, rng, lines))
    return 2 * votes > lines


def verify_dual(F: MPoly, D: MPoly, seed=0, tangent=20, generic=20):
    """Exact checks: D vanishes on all tangents at secant points; D != 0 on transverse lines."""
    rng = make_rng(seed, "forms.dual.verify")
    bad = []
    for xs, f, h in _tangent_residues(F, D, rng, tangent):
        if not _poly_mod(h, f).is_zero():
            bad.append({"tangent_secant": xs})
    X = VarietySpec(3, "hypersurface", [F])
    checked = 0
    while checked < generic:
        u = [int(x) for x in rng.integers(-9, 10, size=3)]
        if not any(u):
            continue
        checked += 1
        c = classify_dual_line(X, u)
        if c.transverse and D.eval(u) == 0:
            bad.append({"transverse_line": u})
    return bad


def dual_plane_curve(F, seed=0, attempts=3) -> DualCurve:
    """Dual curve of a squarefree plane curve F(x0, x1, x2) of degree >= 2."""
    if isinstance(F, str):
        F = parse_poly(F, 3)
    if F.nvars != 3 or not F.is_homogeneous() or F.degree() < 2:
        raise InputError("need a homogeneous ternary form of degree >= 2")
    F = F.integer_primitive()
    d = F.degree()
    gens = sympy.symbols("u0:3")
    last = None
    for attempt in range(attempts):
        rng = make_rng(seed, "forms.dual", attempt)
        g = _random_gl(rng, 3)
        G = F.compose_linear(g)          # G(y) = F(g^T y)
        R = _eliminate_dual(G)
        if R.is_zero():
            continue
        _, factors = _to_sympy(R, gens).factor_list()
        gt = [list(r) for r in zip(*g)]
        kept, removed = [], []
        for P, mult in factors:
            Pm = _from_sympy(P, 3)
            # back to the original frame: F^dual(w) = G^dual(g w)
            back = Pm.compose_linear(gt).integer_primitive()
            if any(Pm.degree_in(i) <= 0 for i in range(3)):
                removed.append({"factor": back.to_string(), "reason": "misses a variable"})
                continue
            if not _is_tangential(F, back, make_rng(seed, "forms.dual.factor", attempt)):
                removed.append({"factor": back.to_string(), "reason": "not tangential"})
                continue
            kept.append(back)
        if not kept:
            continue
        D = kept[0]
        for P in kept[1:]:
            D = D * P
        D = D.integer_primitive()
        bad = verify_dual(F, D, seed)
        last = (D, g, removed, bad)
        if bad:
            continue
        warn = None
        if D.degree() != d * (d - 1):
            warn = f"degree {D.degree()} differs from d(d-1) = {d * (d - 1)} (singular or reducible input)"
        return DualCurve(F, D, D.degree(), len(D.terms), g, removed, warn)
    if last is None:
        raise EliminationError("elimination produced no tangential factor")
    raise EliminationError(f"dual failed verification: {last[3][:3]}")


def biduality_check(F: MPoly, D: MPoly, seed=0, lines=10):
    """At points p of F on random secants, grad D(grad F(p)) is parallel to p.

    Works exactly modulo the squarefree secant polynomial; returns the number
    of secants whose check failed.
    """
    rng = make_rng(seed, "forms.biduality")
    gradD = [D.diff(i) for i in range(3)]
    fails = 0
    grad = [F.diff(i) for i in range(3)]
    for _ in range(lines):
        xs, f = _secant(F, rng)
        gx = [_upoly_int(g, xs) for g in grad]
        w = [_poly_mod(q.eval_ring(gx, zero=UPoly()), f) for q in gradD]
        p = [UPoly([x[0], x[1]]) for x in xs]
        cross = [w[1] * p[2] - w[2] * p[1], w[2] * p[0] - w[0] * p[2], w[0] * p[1] - w[1] * p[0]]
        if any(not _poly_mod(c, f).is_zero() for c in cross):
            fails += 1
    return fails


# ---------------------------------------------------------------------------
# Chow forms of space curves
# ---------------------------------------------------------------------------

PLUECKER_NAMES = ("p01", "p02", "p03", "p12", "p13", "p23")


def reduced_pluecker_basis(D):
    """Degree-D monomials in the six Pluecker variables not divisible by p03*p12."""
    out = []
    for combo in _compositions(D, 6):
        if combo[2] and combo[3]:
            continue
        out.append(combo)
    return out


def _compositions(D, k):
    if k == 1:
        yield (D,)
        return
    for i in range(D, -1, -1):
        for rest in _compositions(D - i, k - 1):
            yield (i,) + rest


def pluecker_normal_form(p: MPoly):
    """Reduce modulo p01 p23 - p02 p13 + p03 p12 by rewriting p03 p12."""
    todo = dict(p.terms)
    out = {}
    while todo:
        e, c = todo.popitem()
        if e[2] and e[3]:
            # p03 p12 = p02 p13 - p01 p23
            base = list(e)
            base[2] -= 1
            base[3] -= 1
            for delta, s in (((0, 1, 0, 0, 1, 0), 1), ((1, 0, 0, 0, 0, 1), -1)):
                ne = tuple(a + b for a, b in zip(base, delta))
                v = todo.get(ne, 0) + s * c
                if v:
                    todo[ne] = v
                else:
                    todo.pop(ne, None)
        else:
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return MPoly(6, out)


def _int_row(r):
    r = [Fraction(v) for v in r]
    den = math.lcm(*(v.denominator for v in r))
    return [int(v * den) for v in r]


def chow_value(X: VarietySpec, rows):
    """Res(F1|L, F2|L) for a 2 x 4 matrix ``rows``.

    Rational rows are first scaled to primitive integer rows, which rescales
    the value by a nonzero factor.
    """
    r0, r1 = (_int_row(r) for r in rows)
    f1 = _restrict_int(X.int_terms(0), r0, r1, X.degrees[0])
    f2 = _restrict_int(X.int_terms(1), r0, r1, X.degrees[1])
    return _zres(f1, f2)


def _pluecker_int(rows):
    r0, r1 = rows
    return [r0[i] * r1[j] - r0[j] * r1[i] for i, j in combinations(range(4), 2)]


_PRIMES = (2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543,
           2147483497, 2147483489, 2147483477, 2147483423, 2147483399, 2147483353)


def _solve_mod(A, b, p):
    """Solve A x = b (mod p) for a full-column-rank system; None if rank deficient."""
    A = np.array(A % p, dtype=np.int64)
    b = np.array(b % p, dtype=np.int64)
    rows, cols = A.shape
    M = np.concatenate([A, b[:, None]], axis=1)
    r = 0
    for c in range(cols):
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            return None
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            # entries stay below 2^31, so products fit in int64
            f = col[nzr][:, None]
            M[nzr] = (M[nzr] - (f * M[r][None, :]) % p) % p
        r += 1
    if np.any(M[r:, cols] % p):
        return None
    return [int(x) for x in M[:cols, cols]]


def _rational_reconstruct(a, m):
    """Fraction n/d with n = a d (mod m), |n|, d <= sqrt(m/2); None if none exists."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


@dataclass
class ChowFormCurve:
    source: VarietySpec
    chow: MPoly
    degree: int
    term_count: int
    samples: int = 0
    height: int = 0
    primes: int = 0
    checks: int = 0

    def to_json(self):
        prov = {"source": [e.to_string() for e in self.source.equations],
                "construction": "interpolation in reduced Pluecker monomials",
                "normal_form": "p03*p12 eliminated, grevlex p01>p02>p03>p12>p13>p23",
                "samples": self.samples, "height": self.height, "primes": self.primes,
                "exact_checks": self.checks}
        return form_to_json(self.chow, PLUECKER_NAMES, self.degree, prov)

    def __call__(self, pl):
        return self.chow.eval(pl)


def chow_form_space_curve(F1, F2=None, seed=0, extra=24, checks=20, rounds=4) -> ChowFormCurve:
    """Chow form of the complete-intersection curve {F1 = F2 = 0} in P^3."""
    if isinstance(F1, VarietySpec):
        X = F1
    else:
        X = VarietySpec(4, "ci_curve", [F1, F2])
    D = X.degree
    basis = reduced_pluecker_basis(D)
    N = len(basis)
    h = 4
    for rnd in range(rounds):
        rng = make_rng(seed, "forms.chow", rnd)
        samples = []
        while len(samples) < N + extra:
            m = rng.integers(-h, h + 1, size=(2, 4))
            rows = [[int(x) for x in r] for r in m]
            pl = _pluecker_int(rows)
            if not any(pl):
                continue
            samples.append((pl, chow_value(X, rows)))
        coeffs = _interpolate(samples, basis)
        if coeffs is None:
            h *= 2
            continue
        chow = MPoly(6, {e: c for e, c in zip(basis, coeffs) if c})
        # exact check on fresh lines
        crng = make_rng(seed, "forms.chow.check", rnd)
        ok = True
        for _ in range(checks):
            rows = [[int(x) for x in r] for r in crng.integers(-2 * h, 2 * h + 1, size=(2, 4))]
            if chow.eval(_pluecker_int(rows)) != chow_value(X, rows):
                ok = False
                break
        if not ok:
            h *= 2
            continue
        chow = chow.integer_primitive()
        return ChowFormCurve(X, chow, D, len(chow.terms), len(samples), h, 0, checks)
    raise EliminationError("Chow form interpolation failed after all rounds")


def _interpolate(samples, basis):
    """Exact solution of sum_b c_b m_b(pl) = value over Q via multi-modular lifting."""
    N = len(basis)
    exps = np.array(basis, dtype=np.int64)
    residues = []
    modulus = 1
    previous = None
    for p in _PRIMES:
        pls = np.array([[x % p for x in pl] for pl, _ in samples], dtype=np.int64)
        # monomial values mod p
        pw = np.ones((len(samples), 6, int(exps.max()) + 1), dtype=np.int64)
        for k in range(1, pw.shape[2]):
            pw[:, :, k] = (pw[:, :, k - 1] * pls) % p
        A = np.ones((len(samples), N), dtype=np.int64)
        for v in range(6):
            A = (A * pw[:, v, exps[:, v]]) % p
        b = np.array([val % p for _, val in samples], dtype=np.int64)
        x = _solve_mod(A, b, p)
        if x is None:
            continue
        if not residues:
            residues = x
            modulus = p
        else:
            # CRT combine
            inv = pow(modulus, -1, p)
            residues = [r + modulus * (((xi - r) * inv) % p) for r, xi in zip(residues, x)]
            modulus *= p
        rec = [_rational_reconstruct(r, modulus) for r in residues]
        if None not in rec and rec == previous:
            return rec
        previous = rec if None not in rec else None
    return None


# ---------------------------------------------------------------------------
# degree formula and named forms
# ---------------------------------------------------------------------------

def hurwitz_degree(deg_x, sectional_genus):
    """Degree 2 deg X + 2 g - 2 of the Hurwitz form."""
    if deg_x < 2 or sectional_genus < 0:
        raise InputError("need deg X >= 2 and genus >= 0")
    return 2 * deg_x + 2 * sectional_genus - 2


# transcribed exactly as printed, in the p_i / p_{ij} notation
NAMED_FORM_TEXT = {
    "veronese_symdet": "p_2^2p_3-p_1p_2p_4+p_0p_4^2+p_1^2p_5-4p_0p_3p_5",
    "segre_hyperdet": "p_{12}^2+p_{03}^2-2p_{02}p_{13}-2p_{01}p_{23}",
}
NAMED_FORM_VARIABLES = {
    "veronese_symdet": ("p_0", "p_1", "p_2", "p_3", "p_4", "p_5"),
    "segre_hyperdet": ("p_{01}", "p_{02}", "p_{03}", "p_{12}", "p_{13}", "p_{23}"),
}


def named_form_checksum(name):
    text = "".join(NAMED_FORM_TEXT[name].split())
    return hashlib.sha256(text.encode()).hexdigest()


def _latex_to_grammar(text, variables):
    """Translate the juxtaposed p_i notation into the x0..x5 text grammar."""
    out = []
    i = 0
    text = "".join(text.split())
    order = sorted(range(len(variables)), key=lambda j: -len(variables[j]))
    need_star = False
    while i < len(text):
        for j in order:
            v = variables[j]
            if text.startswith(v, i):
                if need_star:
                    out.append("*")
                out.append(f"x{j}")
                i += len(v)
                need_star = True
                break
        else:
            ch = text[i]
            if ch.isdigit():
                k = i
                while k < len(text) and text[k].isdigit():
                    k += 1
                if need_star:
                    out.append("*")
                out.append(text[i:k])
                need_star = True
                i = k
            elif ch == "^":
                k = i + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                out.append(text[i:k])
                i = k
            elif ch in "+-":
                out.append(ch)
                need_star = False
                i += 1
            else:
                raise InputError(f"unexpected character {ch!r} in named form")
    return "".join(out)


def named_form(name) -> MPoly:
    if name not in NAMED_FORM_TEXT:
        raise InputError(f"unknown named form {name!r}")
    return parse_poly(_latex_to_grammar(NAMED_FORM_TEXT[name], NAMED_FORM_VARIABLES[name]), 6)


def eval_named_form(name, coords):
    p = named_form(name)
    if len(coords) != 6:
        raise InputError("named forms take 6 coordinates")
    return p.eval(coords)


def hurwitz_sign_consistency(X: VarietySpec, atlas):
    """Sign of the Segre hyperdeterminant on every atlas sample, per region.

    Raises SoundnessError when a region mixes signs, when an avoidant region
    is not negative, an unavoidant one not positive, or a non-transverse
    sample does not evaluate to zero.
    """
    from .regions import SoundnessError
    if set(X.equations[0].integer_primitive().terms) != set(parse_poly("x0*x3 - x1*x2", 4).terms):
        raise InputError("the sign test is set up for the Segre quadric x0*x3 - x1*x2")
    H = named_form("segre_hyperdet")
    region_signs = {}
    nontransverse_zero = True
    for i, sp in enumerate(atlas.spaces):
        v = H.eval(sp.pluecker())
        s = (v > 0) - (v < 0)
        c = atlas.classifications[i]
        if not c.transverse:
            if c.verdict == Verdict.NONTRANSVERSE and s != 0:
                nontransverse_zero = False
            continue
        region_signs.setdefault(atlas.region_of(i), set()).add(s)
    report = {"regions": []}
    ok = nontransverse_zero
    for reg in atlas.regions:
        signs = sorted(region_signs.get(reg.id, set()))
        verdict = Verdict(reg.verdict)
        want = -1 if verdict == Verdict.AVOIDANT else 1
        good = signs == [want]
        ok &= good
        report["regions"].append({"id": reg.id, "verdict": verdict.value,
                                  "signs": signs, "consistent": good})
    report["nontransverse_zero"] = nontransverse_zero
    report["ok"] = ok
    if not ok:
        raise SoundnessError(f"hyperdeterminant sign inconsistency: {report}")
    return report
