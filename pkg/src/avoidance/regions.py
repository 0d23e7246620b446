"""Region atlases for the complement of a discriminant in a real Grassmannian.

Sampled linear spaces are classified exactly; candidate pairs (nearest
neighbours plus one long-range pair per sample) are merged in a union-find
when an exact wall certificate shows the connecting segment stays inside one
region.  Counts are therefore lower bounds on connectivity: every merge is
certified, while two classes that remain separate are only separated up to
the merge attempts made (``max_merge_attempts``).

Four sampling models are supported:

* ``line``  - lines (k = 2) against a hypersurface, segments in a shared chart;
* ``point`` - points (k = 1) against a hypersurface;
* ``dual``  - lines of P^2 given by normal vectors, against a plane curve;
* ``curve`` - planes of P^3 given by normal vectors, against a space curve.

Floating point is only used to pick candidate pairs and to generate samples
near the real locus; every decision is exact.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.spatial import cKDTree

from . import classify as cl
from .classify import (CI_CURVE, HYPERSURFACE, Classification, VarietySpec, Verdict,
                       WallPolynomial, _classify_int_form, _int_vec, _restrict_int)
from .grassmann import (ChartPoint, LinSpace, chart_point_matrix, kernel_basis, linspace_to_json,
                        make_rng, pencil_eval, random_space, raw_segment, rref, segment)
from .poly import DegenerateInputError, InputError, UPoly, _trim, _zsign_at, sturm_count


class EmptyAtlasError(RuntimeError):
    """No transverse samples were drawn."""


class SoundnessError(RuntimeError):
    """A region member does not carry its region's label (missed wall)."""


@dataclass
class AtlasConfig:
    X: VarietySpec
    k: int = 2
    samples: int = 2000
    seed: int = 0
    height: int = 8
    grid: int = 17
    max_merge_attempts: int = 12
    neighbors: int = 8
    near_fraction: float = 0.25
    near_denominator: int = 4096
    mode: str = "multichart"
    model: str = "auto"
    cleanup: bool = True

    def __post_init__(self):
        if self.samples < 1:
            raise InputError("samples must be >= 1")
        if self.k not in (1, 2, self.X.n - 1):
            raise InputError("k must be 1, 2 or n-1")
        if self.mode not in ("multichart", "chart1", "chart2"):
            raise InputError(f"unknown mode {self.mode!r}")

    def resolved_model(self):
        if self.model != "auto":
            return self.model
        if self.X.kind == CI_CURVE:
            if self.k != 3:
                raise InputError("space curves are supported for plane atlases (k = 3)")
            return "curve"
        if self.k == 1:
            return "point"
        if self.k == self.X.n - 1 and self.X.n == 3:
            return "dual"
        if self.k == 2:
            return "line"
        raise InputError("unsupported (variety, k) combination")

    def to_json(self):
        d = {f: getattr(self, f) for f in self.__dataclass_fields__ if f != "X"}
        d["variety"] = self.X.to_json()
        return d


# ---------------------------------------------------------------------------
# sampling helpers (floats are used only to propose samples)
# ---------------------------------------------------------------------------

def _rationalize(vec, den):
    v = np.asarray(vec, dtype=float)
    v = v / np.max(np.abs(v))
    return [Fraction(x).limit_denominator(den) for x in v]


def _float_points_on(X, rng, count=1, tries=20):
    """Points of the real locus of a hypersurface, from random secant lines."""
    n = X.n
    d = X.degrees[0]
    terms = [(float(c), e) for c, e in X.int_terms()]
    pts = []
    for _ in range(tries):
        a, b = rng.standard_normal(n), rng.standard_normal(n)
        f = _restrict_int(terms, list(a), list(b), d)
        # roots in x = s0/s1 of sum f[i] x^(d-i)
        roots = np.roots(f)
        real = [r.real for r in roots if abs(r.imag) < 1e-9 * max(1.0, abs(r))]
        for r in real:
            pts.append(r * a + b)
        if len(pts) >= count:
            return pts
    return pts


def _curve_float_points(C, rng, count):
    par = C.parametrization
    e = len(par[0]) - 1
    out = []
    for _ in range(count):
        th = rng.uniform(0, math.pi)
        s0, s1 = math.cos(th), math.sin(th)
        out.append(np.array([sum(g[i] * s0 ** (e - i) * s1 ** i for i in range(e + 1)) for g in par]))
    return out


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

class _Model:
    name = ""
    transverse_labels = (Verdict.AVOIDANT.value, Verdict.UNAVOIDANT.value)

    def __init__(self, cfg: AtlasConfig):
        self.cfg = cfg
        self.X = cfg.X
        self.n = cfg.X.n

    def admissible(self, c: Classification):
        """Whether a sample lies off the discriminant and so belongs to a region."""
        return c.transverse

    def passable(self, w: WallPolynomial, label):
        return w.stays_in_region(label)

    def connect(self, a, b, label):
        """Try to certify that a and b lie in one region; returns (ok, certificate)."""
        for w in self.walls(a, b):
            if self.passable(w, label):
                return True, w
        return False, None

    def label(self, c: Classification, space):
        return c.label

    def vec(self, space):
        v = np.array([float(x) for x in space.pluecker()])
        return v / np.linalg.norm(v)

    def blend(self, a, b, lam, eps, rng):
        """A rational space near (1 - lam) a + lam b, perturbed by eps (vector models)."""
        p = np.array([float(x) for x in a.matrix[0]])
        q = np.array([float(x) for x in b.matrix[0]])
        p, q = p / np.linalg.norm(p), q / np.linalg.norm(q)
        if p @ q < 0:
            q = -q
        v = (1 - lam) * p + lam * q + eps * rng.standard_normal(len(p))
        if not np.any(v):
            return None
        return LinSpace([_rationalize(v, self.cfg.near_denominator)])


class LineModel(_Model):
    name = "line"

    def __init__(self, cfg):
        super().__init__(cfg)
        if self.X.kind != HYPERSURFACE:
            raise InputError("line atlases need a hypersurface")
        self.mode = cfg.mode

    def sample_uniform(self, rng):
        h = self.cfg.height
        n = self.n
        if self.mode == "multichart":
            return random_space(2, n, rng, h)
        k = 2 * n - 4 if self.mode == "chart1" else 2 * n - 5
        nums = rng.integers(-h, h + 1, size=k)
        dens = rng.integers(1, h + 1, size=k)
        params = [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]
        return chart_point_matrix(ChartPoint(1 if self.mode == "chart1" else 2, tuple(params)), n)

    def sample_near(self, rng):
        pts = _float_points_on(self.X, rng, 2)
        if len(pts) < 2:
            return None
        i, j = rng.choice(len(pts), size=2, replace=False)
        scale = 10 ** rng.uniform(-3, -0.5)
        p = pts[i] / np.linalg.norm(pts[i])
        q = pts[j] / np.linalg.norm(pts[j])
        if rng.random() < 0.3:
            q = rng.standard_normal(self.n)
        p = p + scale * rng.standard_normal(self.n)
        q = q + scale * rng.standard_normal(self.n)
        m = np.vstack([p, q])
        den = self.cfg.near_denominator
        if self.mode == "multichart":
            rows = [_rationalize(r, den) for r in m]
        else:
            piv = (0, 1) if self.mode == "chart1" else (0, 2)
            sub = m[:, piv]
            if abs(np.linalg.det(sub)) < 1e-8:
                return None
            m = np.linalg.solve(sub, m)
            rows = [[Fraction(x).limit_denominator(den) for x in r] for r in m]
            for i_, c in enumerate(piv):
                for r_ in range(2):
                    rows[r_][c] = Fraction(int(r_ == i_))
            if self.mode == "chart2":
                rows[1][1] = Fraction(0)
        try:
            return LinSpace(rows)
        except DegenerateInputError:
            return None

    def classify(self, space):
        return cl.classify_line(self.X, space)

    def vec(self, space):
        return space.pluecker_float()

    def segment(self, a, b):
        if self.mode == "multichart":
            return segment(a, b)
        return raw_segment(a, b)

    def walls(self, a, b):
        yield cl.wall_polynomial(self.X, a, b, seg=self.segment(a, b))

    def blend(self, a, b, lam, eps, rng):
        seg = self.segment(a, b)
        m = np.array([[float(x) for x in r] for r in pencil_eval(seg, Fraction(0)).matrix])
        m2 = np.array([[float(x) for x in r] for r in pencil_eval(seg, Fraction(1)).matrix])
        m = (1 - lam) * m + lam * m2
        free = np.ones_like(m, dtype=bool)
        piv = seg.pivots if self.mode == "multichart" else ((0, 1) if self.mode == "chart1" else (0, 2))
        if piv is not None:
            free[:, list(piv)] = False
            if self.mode == "chart2":
                free[1, 1] = False
        m = m + eps * rng.standard_normal(m.shape) * free * np.max(np.abs(m))
        den = self.cfg.near_denominator
        rows = [[Fraction(x).limit_denominator(den) for x in r] for r in m]
        if piv is not None:
            for i_, c in enumerate(piv):
                for r_ in range(2):
                    rows[r_][c] = Fraction(int(r_ == i_))
        try:
            return LinSpace(rows)
        except DegenerateInputError:
            return None


class PointModel(_Model):
    name = "point"

    def __init__(self, cfg):
        super().__init__(cfg)
        if self.X.kind != HYPERSURFACE:
            raise InputError("point atlases need a hypersurface")
        self.d = self.X.degrees[0]

    def sample_uniform(self, rng):
        return random_space(1, self.n, rng, self.cfg.height)

    def sample_near(self, rng):
        pts = _float_points_on(self.X, rng, 1)
        if not pts:
            return None
        p = pts[0] / np.linalg.norm(pts[0])
        p = p + 10 ** rng.uniform(-3, -0.5) * rng.standard_normal(self.n)
        return LinSpace([_rationalize(p, self.cfg.near_denominator)])

    def _sign(self, v):
        return cl.point_sign(self.X, v)

    def classify(self, space):
        return cl.classify_point(self.X, space.matrix[0])

    def admissible(self, c):
        # the complement of X_R; points of X_R are the walls
        return c.verdict == Verdict.AVOIDANT

    def label(self, c, space):
        if self.d % 2 == 0 and c.verdict == Verdict.AVOIDANT:
            return c.label + (self._sign(space.matrix[0]),)
        return c.label

    def walls(self, a, b):
        yield self.point_wall(a, b)

    def point_wall(self, a, b):
        ua, ub = _int_vec(a.matrix[0]), _int_vec(b.matrix[0])
        j = max(range(self.n), key=lambda i: min(abs(ua[i]) / max(map(abs, ua)),
                                                 abs(ub[i]) / max(map(abs, ub))))
        # scale so both have the same positive pivot coordinate
        A = [Fraction(x, ua[j]) for x in ua]
        B = [Fraction(x, ub[j]) for x in ub]
        den = 1
        for x in A + B:
            den = den * x.denominator // math.gcd(den, x.denominator)
        Ai = [int(x * den) for x in A]
        Di = [int((y - x) * den) for x, y in zip(A, B)]
        c = _restrict_int(self.X.int_terms(), Ai, Di, self.d)
        g = _trim(list(c))  # F(A + t D) = sum c[i] t^i
        if not g:
            raise cl.SegmentInDiscriminant("segment lies on the hypersurface")
        even = self.d % 2 == 0

        def label_at(t):
            val_sign = _zsign_at(g, t)
            if val_sign == 0:
                return (Verdict.UNAVOIDANT.value, 1)
            base = (Verdict.AVOIDANT.value, 0)
            if even:
                return base + (val_sign,)
            return base + ("path", val_sign)

        ivs, params, labels = cl._unit_interval_analysis(g, label_at)
        return WallPolynomial(UPoly.from_ints(g), {"kind": "point_segment", "pivot": j}, ivs,
                              params, labels)

    def passable(self, w, label):
        if self.d % 2 == 0:
            return w.stays_in_region(label)
        return w.gap_labels[0][0] == Verdict.AVOIDANT.value and w.stays_in_region()

    def vec(self, space):
        v = np.array([float(x) for x in space.matrix[0]])
        return v / np.linalg.norm(v)


class DualPlaneModel(_Model):
    name = "dual"

    def __init__(self, cfg):
        super().__init__(cfg)
        if self.X.kind != HYPERSURFACE or self.n != 3:
            raise InputError("dual atlases need a plane curve")

    def sample_uniform(self, rng):
        return random_space(1, 3, rng, self.cfg.height)

    def sample_near(self, rng):
        pts = _float_points_on(self.X, rng, 2)
        if len(pts) < 2:
            return None
        i, j = rng.choice(len(pts), size=2, replace=False)
        p = pts[i] / np.linalg.norm(pts[i])
        q = pts[j] / np.linalg.norm(pts[j])
        u = np.cross(p, q)
        if np.linalg.norm(u) < 1e-9:
            return None
        u = u / np.linalg.norm(u) + 10 ** rng.uniform(-3.5, -0.5) * rng.standard_normal(3)
        return LinSpace([_rationalize(u, self.cfg.near_denominator)])

    def classify(self, space):
        return cl.classify_dual_line(self.X, space.matrix[0])

    def vec(self, space):
        v = np.array([float(x) for x in space.matrix[0]])
        return v / np.linalg.norm(v)

    def walls(self, a, b):
        u0, u1 = a.matrix[0], b.matrix[0]
        yield cl.dual_wall_polynomial(self.X, u0, u1)
        yield cl.dual_wall_polynomial(self.X, u0, [-x for x in u1])


class CurveModel(_Model):
    name = "curve"

    def __init__(self, cfg):
        super().__init__(cfg)
        if self.X.kind != CI_CURVE:
            raise InputError("curve atlases need a complete-intersection curve")

    def sample_uniform(self, rng):
        return random_space(1, 4, rng, self.cfg.height)

    def sample_near(self, rng):
        if self.X.parametrization is None:
            return None
        pts = _curve_float_points(self.X, rng, 3)
        m = np.vstack([p / np.linalg.norm(p) for p in pts])
        m = m + 10 ** rng.uniform(-3, -0.5) * rng.standard_normal(m.shape)
        _, _, vt = np.linalg.svd(m)
        return LinSpace([_rationalize(vt[-1], self.cfg.near_denominator)])

    def classify(self, space):
        return cl.classify_hyperplane_vs_curve(self.X, space.matrix[0], seed=self.cfg.seed)

    def vec(self, space):
        v = np.array([float(x) for x in space.matrix[0]])
        return v / np.linalg.norm(v)

    def walls(self, a, b):
        u0, u1 = a.matrix[0], b.matrix[0]
        yield cl.curve_hyperplane_wall(self.X, u0, u1, seed=self.cfg.seed)
        yield cl.curve_hyperplane_wall(self.X, u0, [-x for x in u1], seed=self.cfg.seed)


MODELS = {"line": LineModel, "point": PointModel, "dual": DualPlaneModel, "curve": CurveModel}


def make_model(cfg: AtlasConfig) -> _Model:
    return MODELS[cfg.resolved_model()](cfg)


# ---------------------------------------------------------------------------
# atlas
# ---------------------------------------------------------------------------

@dataclass
class Region:
    id: int
    label: tuple
    representative: int
    members: list

    @property
    def verdict(self):
        return self.label[0]

    @property
    def real_points(self):
        return self.label[1]

    @property
    def member_count(self):
        return len(self.members)


@dataclass
class RegionAtlas:
    config: AtlasConfig
    model: _Model
    spaces: list
    classifications: list
    labels: list
    transverse: list
    parent: DisjointSet
    certificates: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    _regions: list | None = None
    _vecs: np.ndarray | None = None

    # -- structure ---------------------------------------------------------
    def union(self, i, j, cert):
        if self.parent.merge(i, j):
            self._regions = None
            self.certificates.append(_compact_certificate(i, j, cert))
            return True
        return False

    @property
    def regions(self):
        if self._regions is None:
            groups = {}
            for i in self.transverse:
                groups.setdefault(self.parent[i], []).append(i)
            ordered = sorted(groups.values(), key=lambda m: (-len(m), min(m)))
            self._regions = [Region(rid, self.labels[m[0]], min(m), sorted(m))
                             for rid, m in enumerate(ordered)]
        return self._regions

    def region_of(self, i):
        root = self.parent[i]
        for r in self.regions:
            if self.parent[r.representative] == root:
                return r.id
        raise KeyError(i)

    @property
    def region_count(self):
        return len(self.regions)

    @property
    def avoidant_region_count(self):
        return sum(1 for r in self.regions if r.verdict == Verdict.AVOIDANT.value)

    def label_multiset(self):
        return sorted((r.verdict, r.real_points) for r in self.regions)

    def vecs(self):
        if self._vecs is None:
            self._vecs = np.vstack([self.model.vec(self.spaces[i]) for i in range(len(self.spaces))])
        return self._vecs

    # -- checks ------------------------------------------------------------
    def check_soundness(self):
        """Re-classify every member; raise on any label mismatch."""
        for r in self.regions:
            for i in r.members:
                c = self.model.classify(self.spaces[i])
                if self.model.label(c, self.spaces[i]) != r.label:
                    raise SoundnessError(f"sample {i} has label {c.label}, region {r.id} has {r.label}")
        return True

    def certificates_digest(self):
        h = hashlib.sha256()
        for c in self.certificates:
            h.update(json.dumps(c, sort_keys=True).encode())
        return h.hexdigest()

    # -- location ----------------------------------------------------------
    def locate(self, space, attempts=None, classification=None):
        """Region id of ``space`` by certified connection to a same-label member, or None."""
        attempts = attempts or max(self.config.max_merge_attempts, 8)
        c = classification or self.model.classify(space)
        if not self.model.admissible(c):
            return None
        lab = self.model.label(c, space)
        cand = [i for i in self.transverse if self.labels[i] == lab]
        if not cand:
            return None
        v = self.model.vec(space)
        sims = np.abs(self.vecs()[cand] @ v)
        order = np.argsort(-sims, kind="stable")
        tried_roots = set()
        for idx in order:
            i = cand[int(idx)]
            root = self.parent[i]
            if len(tried_roots) >= attempts:
                break
            if root in tried_roots and len(tried_roots) < len({self.parent[j] for j in cand}):
                continue
            tried_roots.add(root)
            try:
                ok, _ = self.model.connect(space, self.spaces[i], lab)
            except cl.SegmentInDiscriminant:
                ok = False
            if ok:
                return self.region_of(i)
        return None

    # -- report ------------------------------------------------------------
    def to_json(self):
        regs = []
        for r in self.regions:
            sp = self.spaces[r.representative]
            regs.append({
                "id": r.id,
                "verdict": r.verdict,
                "real_points": r.real_points,
                "label": list(r.label),
                "representative": linspace_to_json(sp),
                "member_count": r.member_count,
            })
        kinds = {}
        for c in self.classifications:
            kinds[c.verdict.value] = kinds.get(c.verdict.value, 0) + 1
        return {
            "config": self.config.to_json(),
            "regions": regs,
            "totals": {"samples": len(self.spaces), "transverse": len(self.transverse),
                       "regions": self.region_count, "by_verdict": kinds,
                       "merges": len(self.certificates)},
            "avoidant_region_count": self.avoidant_region_count,
            "certificates_digest": self.certificates_digest(),
            "flags": self.flags,
        }


def _compact_certificate(i, j, w):
    if w is None:
        return {"pair": [i, j]}
    return {"pair": [int(i), int(j)], "g": [str(c) for c in w.g.coeffs],
            "roots": [[str(a), str(b)] for a, b in w.intervals],
            "gap_labels": [list(x) for x in w.gap_labels]}


def _is_near_index(i, frac):
    return math.floor((i + 1) * frac) > math.floor(i * frac)


def _draw(model, cfg, rngs, i):
    space = None
    if cfg.near_fraction > 0 and _is_near_index(i, cfg.near_fraction) and hasattr(model, "sample_near"):
        space = model.sample_near(rngs["near"])
    if space is None:
        space = model.sample_uniform(rngs["uniform"])
    return space


def _previous_neighbors(tree, vecs, pos, count, npts):
    """Indices (< pos) of the ``count`` nearest earlier points, sign-insensitive."""
    if pos == 0:
        return []
    if pos <= 4 * count:
        sims = np.abs(vecs[:pos] @ vecs[pos])
        order = np.argsort(-sims, kind="stable")[:count]
        return [int(x) for x in order]
    kq = min(2 * npts, 8 * count)
    while True:
        _, idx = tree.query(vecs[pos], k=kq)
        out = []
        seen = set()
        for x in np.atleast_1d(idx):
            j = int(x) % npts
            if j < pos and j not in seen:
                seen.add(j)
                out.append(j)
                if len(out) == count:
                    return out
        if kq >= 2 * npts:
            return out
        kq = min(2 * npts, kq * 4)


def _try_connect(atlas, i, j):
    lab = atlas.labels[i]
    if atlas.labels[j] != lab or atlas.parent.connected(i, j):
        return False
    try:
        ok, w = atlas.model.connect(atlas.spaces[i], atlas.spaces[j], lab)
    except cl.SegmentInDiscriminant:
        return False
    if ok:
        atlas.union(i, j, w)
    return ok


def build_atlas(cfg: AtlasConfig) -> RegionAtlas:
    """Sample, classify and merge; deterministic given the configuration."""
    model = make_model(cfg)
    rngs = {"uniform": make_rng(cfg.seed, "atlas.uniform"), "near": make_rng(cfg.seed, "atlas.near")}
    spaces, classes, labels = [], [], []
    for i in range(cfg.samples):
        sp = _draw(model, cfg, rngs, i)
        c = model.classify(sp)
        spaces.append(sp)
        classes.append(c)
        labels.append(model.label(c, sp) if model.admissible(c) else c.label)
    transverse = [i for i, c in enumerate(classes) if model.admissible(c)]
    if not transverse:
        raise EmptyAtlasError("no transverse samples")
    atlas = RegionAtlas(cfg, model, spaces, classes, labels, transverse, DisjointSet(transverse))
    merge_transverse(atlas)
    if cfg.cleanup:
        cleanup(atlas)
    return atlas


def merge_transverse(atlas: RegionAtlas):
    """The main merge phase: nearest earlier neighbours plus one long-range pair."""
    cfg = atlas.config
    T = atlas.transverse
    vecs = atlas.vecs()[T]
    npts = len(T)
    tree = cKDTree(np.vstack([vecs, -vecs]))
    for pos in range(npts):
        i = T[pos]
        for q in _previous_neighbors(tree, vecs, pos, cfg.neighbors, npts):
            _try_connect(atlas, i, T[q])
        if pos > 0:
            r = make_rng(cfg.seed, "atlas.longrange", pos)
            _try_connect(atlas, i, T[int(r.integers(0, pos))])


def cleanup(atlas: RegionAtlas):
    """Retry every pair of same-label classes with direct and two-leg paths."""
    cfg = atlas.config
    rng = make_rng(cfg.seed, "atlas.cleanup")
    vecs = atlas.vecs()
    changed = True
    rounds = 0
    while changed and rounds < 3:
        changed = False
        rounds += 1
        by_label = {}
        for r in atlas.regions:
            by_label.setdefault(r.label, []).append(r)
        for lab, regs in sorted(by_label.items(), key=lambda kv: str(kv[0])):
            regs = sorted(regs, key=lambda r: r.representative)
            for ai in range(len(regs)):
                for bi in range(ai + 1, len(regs)):
                    A, B = regs[ai], regs[bi]
                    if atlas.parent.connected(A.representative, B.representative):
                        continue
                    if _cleanup_pair(atlas, A, B, lab, rng, vecs):
                        changed = True
            atlas._regions = None


def _cleanup_pair(atlas, A, B, lab, rng, vecs):
    cfg = atlas.config
    a_idx = A.members if len(A.members) <= 400 else list(rng.choice(A.members, 400, replace=False))
    b_idx = B.members if len(B.members) <= 2000 else list(rng.choice(B.members, 2000, replace=False))
    sims = np.abs(vecs[a_idx] @ vecs[b_idx].T)
    flat = np.argsort(-sims, axis=None, kind="stable")
    direct = max(1, cfg.max_merge_attempts // 2)
    pairs = []
    used_a, used_b = set(), set()
    for f in flat:
        ia, ib = divmod(int(f), len(b_idx))
        if ia in used_a or ib in used_b:
            continue
        used_a.add(ia)
        used_b.add(ib)
        pairs.append((int(a_idx[ia]), int(b_idx[ib])))
        if len(pairs) >= direct:
            break
    for i, j in pairs:
        if _try_connect(atlas, i, j):
            return True
    model = atlas.model
    rngs = {"uniform": rng, "near": rng}
    for attempt in range(cfg.max_merge_attempts - direct):
        i, j = pairs[attempt % len(pairs)]
        if attempt % 3 == 2:
            m = _draw(model, cfg, rngs, attempt)
        else:
            # local midpoint around the closest pair, at growing scales
            eps = 0.005 * 2 ** (attempt % 5)
            lam = (0.0, 1.0, float(rng.uniform(0, 1)))[(attempt // 3) % 3]
            m = model.blend(atlas.spaces[i], atlas.spaces[j], lam, eps, rng)
            if m is None:
                continue
        c = model.classify(m)
        if not model.admissible(c) or model.label(c, m) != lab:
            continue
        try:
            ok1, w1 = model.connect(atlas.spaces[i], m, lab)
            ok2, w2 = model.connect(m, atlas.spaces[j], lab) if ok1 else (False, None)
        except cl.SegmentInDiscriminant:
            continue
        if ok1 and ok2:
            atlas.union(i, j, w1)
            atlas.certificates[-1]["via"] = linspace_to_json(m)
            atlas.certificates[-1]["second_leg"] = [str(x) for x in w2.g.coeffs]
            return True
    return False


# ---------------------------------------------------------------------------
# chart gluing for Gr(2, n)
# ---------------------------------------------------------------------------

@dataclass
class GlueReport:
    merged_pairs: list
    unlocated: list
    default_ts: list


def glue_charts(atlas1: RegionAtlas, atlas2: RegionAtlas, X: VarietySpec, retries=5):
    """Merge chart-1 regions that meet across the boundary {p01 = 0}.

    For each chart-2 region, a representative M is moved off the boundary
    along M(t) = M + t E where E adds t at row 1, column 1 (so p01 = t).
    With t_s below the smallest |real root| of g(t) = disc F|M(t), the
    spaces M(t_s) and M(-t_s) lie in the same region as M; both are
    row-reduced into chart 1, located there, and their regions merged.
    Returns the (mutated) atlas1 and a GlueReport.
    """
    if atlas1.config.mode != "chart1" or atlas2.config.mode != "chart2":
        raise InputError("glue_charts expects a chart-1 and a chart-2 atlas")
    merged, unlocated, default_ts = [], [], []
    for reg in atlas2.regions:
        done = False
        for idx in reg.members[:retries]:
            M = atlas2.spaces[idx]
            A = [list(r) for r in M.int_rows()]
            Dm = [[0] * X.n, [0] * X.n]
            # scale of row 1 is positive, so adding t to its entry (1,1) in the
            # scaled family is a reparametrization t -> t * scale
            Dm[1][1] = 1
            g = cl.family_discriminant(X, A, Dm)
            gp = UPoly.from_ints(g)
            if gp(0) == 0:
                continue
            ts = Fraction(1)
            if len(g) > 1 and sturm_count(gp) > 0:
                while gp(ts) == 0 or gp(-ts) == 0 or sturm_count(gp, -ts, ts) > 0:
                    ts /= 2
            else:
                default_ts.append(reg.id)
            located = []
            for sgn in (1, -1):
                rows = [list(A[0]), [a + sgn * ts * b for a, b in zip(A[1], Dm[1])]]
                P = LinSpace(rows).chart_matrix((0, 1))
                P = LinSpace(P, check=False)
                located.append(atlas1.locate(P))
            if None in located:
                continue
            r1, r2 = located
            rep1 = atlas1.regions[r1].representative
            rep2 = atlas1.regions[r2].representative
            if r1 != r2:
                atlas1.union(rep1, rep2, None)
                atlas1.certificates[-1]["glue"] = {"chart2_sample": idx, "t_s": str(ts),
                                                   "g": [str(c) for c in g]}
                merged.append((r1, r2))
            done = True
            break
        if not done:
            unlocated.append(reg.id)
    atlas1.flags["glue"] = {"merged": len(merged), "unlocated_chart2_regions": unlocated,
                            "default_ts_regions": default_ts}
    return atlas1, GlueReport(merged, unlocated, default_ts)


# ---------------------------------------------------------------------------
# wall crossings and projections
# ---------------------------------------------------------------------------

@dataclass
class WallCrossing:
    start: LinSpace
    direction: LinSpace | None
    t_star: tuple | None
    before: tuple | None
    after: tuple | None

    @property
    def unbounded(self):
        return self.t_star is None


def cross_first_wall(X: VarietySpec, start: LinSpace, seed, max_retries=10, height=8,
                     model: str = "auto"):
    """Walk from ``start`` towards random spaces and report the first wall crossing."""
    cfg_k = 2 if start.k == 2 and start.n == X.n else X.n - 1
    cfg = AtlasConfig(X, k=cfg_k, samples=1, seed=seed, height=height, model=model)
    m = make_model(cfg)
    rng = make_rng(seed, "cross_first_wall")
    for _ in range(max_retries):
        target = m.sample_uniform(rng)
        try:
            w = next(iter(m.walls(start, target)))
        except cl.SegmentInDiscriminant:
            continue
        if not w.intervals:
            continue
        g = [int(c) for c in w.g.coeffs]
        lo, hi = w.intervals[0]
        lo, hi = cl.refine_first_root(g, lo, hi) if lo <= 0 else (lo, hi)
        before = _label_along(m, start, target, lo)
        after = _label_along(m, start, target, hi)
        return WallCrossing(start, target, (lo, hi), before, after)
    return WallCrossing(start, None, None, None, None)


def _label_along(model, a, b, t):
    if isinstance(model, LineModel):
        seg = model.segment(a, b)
        A, Dm = seg.int_family()
        rows = [[t.denominator * x + t.numerator * y for x, y in zip(ra, rb)] for ra, rb in zip(A, Dm)]
        return _classify_int_form(_restrict_int(model.X.int_terms(), rows[0], rows[1],
                                                model.X.degrees[0])).label
    u0, u1 = a.matrix[0], b.matrix[0]
    u = [x + t * (y - x) for x, y in zip(u0, u1)]
    sp = LinSpace([u])
    return model.label(model.classify(sp), sp)


def project_down(atlas: RegionAtlas, region_id, count, seed, lower: RegionAtlas):
    """Locate random codimension-one subspaces of members of a region in ``lower``.

    Returns (set of lower region ids, number of unlocated samples).
    """
    reg = atlas.regions[region_id]
    rng = make_rng(seed, "project_down")
    found = set()
    unlocated = 0
    for _ in range(count):
        i = reg.members[int(rng.integers(0, len(reg.members)))]
        sp = atlas.spaces[i]
        if atlas.model.name in ("dual", "curve"):
            basis = kernel_basis([list(sp.matrix[0])])
        else:
            basis = [list(r) for r in sp.matrix]
        if lower.model.name == "point":
            coeffs = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) for _ in basis]
            if not any(coeffs):
                continue
            v = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(len(basis[0]))]
            sub = LinSpace([v])
        elif lower.model.name == "line":
            M = [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) for _ in basis]
                 for _ in range(2)]
            rows = [[sum(c * b[j] for c, b in zip(r, basis)) for j in range(len(basis[0]))] for r in M]
            if cl_rank(rows) < 2:
                continue
            sub = LinSpace(rows)
        else:
            raise InputError("lower atlas must be a point or line atlas")
        c = lower.model.classify(sub)
        if not lower.model.admissible(c):
            continue
        rid = lower.locate(sub, classification=c)
        if rid is None:
            unlocated += 1
        else:
            found.add(rid)
    return found, unlocated


def cl_rank(rows):
    return len(rref(rows)[1])
