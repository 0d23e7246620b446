"""Convexity tests for avoidant regions and for slices of Grassmannians.

Regions of hyperplanes (points of the dual projective space) are tested in a
fixed affine chart: every normal vector u is lifted to the side where u . x0
is positive for a reference point x0 on X, and segments are convex
combinations of those lifts.  A segment certifies convexity for a pair when
its exact wall polynomial has no confirmed root; a confirmed root between two
avoidant members is a non-convexity witness.

Slices: a plane E in P^3 with row basis E (3 x 4) identifies lines in E with
lines in P^2, and X cut with E becomes the plane curve F(y E) in the
intrinsic coordinates y.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from . import classify as cl
from .classify import HYPERSURFACE, VarietySpec, Verdict, classify_line
from .grassmann import LinSpace, kernel_basis, linspace_to_json, make_rng, random_space
from .poly import DegenerateInputError, InputError, MPoly, ZeroFormError
from .regions import AtlasConfig, RegionAtlas, _curve_float_points, _float_points_on, build_atlas


class ConvexityVerdict(str, enum.Enum):
    CONVEX_UP_TO_SAMPLING = "ConvexUpToSampling"
    NON_CONVEX_WITNESS = "NonConvexWitness"
    TRIVIAL = "Trivial"


class SlicingSoundnessError(RuntimeError):
    pass


@dataclass
class ConvexityReport:
    region: object
    trials: int
    failures: list
    verdict: ConvexityVerdict
    reference: list | None = None
    chart: str = "real_point"
    chart_sensitive: int = 0
    skipped: int = 0

    def to_json(self):
        return {"region": self.region, "trials": self.trials, "verdict": self.verdict.value,
                "failures": self.failures, "reference": self.reference, "chart": self.chart,
                "chart_sensitive": self.chart_sensitive, "skipped": self.skipped}


def _vec_model(atlas):
    return atlas.model.name in ("dual", "curve", "point")


def _lift(u, ref):
    """Sign of u chosen so that u . ref > 0 (float inner product for the choice only)."""
    s = sum(float(a) * float(b) for a, b in zip(u, ref))
    return list(u) if s >= 0 else [-x for x in u]


def _vector_wall(atlas, u0, u1):
    X = atlas.config.X
    if atlas.model.name == "dual":
        return cl.dual_wall_polynomial(X, u0, u1)
    if atlas.model.name == "curve":
        return cl.curve_hyperplane_wall(X, u0, u1, seed=atlas.config.seed)
    return atlas.model.point_wall(LinSpace([u0]), LinSpace([u1]))


def segment_in_region(X, L0, L1, atlas=None, reference=None, seg=None):
    """(ok, certificate) for the segment from L0 to L1.

    Lines in Gr(2, n) use the chart segment of ``wall_polynomial``, or the
    explicit matrix segment ``seg`` when given.  For
    hyperplane atlases L0, L1 are normal vectors (or 1-row spaces) and the
    segment is taken between their lifts in the chart of ``reference``.
    """
    if atlas is not None and _vec_model(atlas):
        u0 = list(L0.matrix[0]) if isinstance(L0, LinSpace) else list(L0)
        u1 = list(L1.matrix[0]) if isinstance(L1, LinSpace) else list(L1)
        ref = reference if reference is not None else u0
        a, b = _lift(u0, ref), _lift(u1, ref)
        w = _vector_wall(atlas, a, b)
    else:
        if isinstance(L0, LinSpace) and L0.same_space(L1):
            w = cl.wall_polynomial(X, L0, L0)
        else:
            w = cl.wall_polynomial(X, L0, L1, seg=seg)
    ok = w.stays_in_region() and not w.rank_drop
    return ok, w


def _witness(atlas, i, j, w):
    k = w.first_confirmed
    return {"endpoints": [linspace_to_json(atlas.spaces[i]), linspace_to_json(atlas.spaces[j])],
            "members": [int(i), int(j)],
            "wall": [str(c) for c in w.g.coeffs],
            "isolating_interval": ([str(x) for x in w.intervals[k]] if k is not None and w.intervals
                                   else None),
            "gap_labels": [list(lab) for lab in w.gap_labels],
            "confirmed": k is not None}


CHARTS = ("real_point", "avoidant_sample")


def reference_point(atlas, seed=0, chart="real_point"):
    """Chart reference for hyperplane atlases.

    "real_point": a real point x0 of X.  sign(u . x0) is constant on every
    avoidant region, so lifting each normal to u . x0 > 0 sends the region
    into one convex cone.  "avoidant_sample": the first avoidant sample under
    the seed, used as a normal of the chart.  Point atlases (and curves
    without a parametrization) always use the avoidant sample.
    """
    if chart not in CHARTS:
        raise InputError(f"unknown chart {chart!r}")
    rng = make_rng(seed, "convexity.reference")
    X = atlas.config.X
    pts = []
    if chart == "avoidant_sample":
        pass
    elif atlas.model.name == "dual":
        pts = _float_points_on(X, rng, 1)
    elif atlas.model.name == "curve" and X.parametrization is not None:
        pts = _curve_float_points(X, rng, 1)
    if pts:
        return [float(x) for x in pts[0]]
    for i in atlas.transverse:
        if atlas.classifications[i].verdict == Verdict.AVOIDANT:
            return list(atlas.spaces[i].matrix[0])
    return None


def test_region_convexity(atlas: RegionAtlas, region, trials=200, seed=0, reference=None,
                          chart="real_point"):
    """Run seeded member pairs of a region (or a union of regions) through segment_in_region.

    ``region`` is a region id or a list of ids (their union is tested).  A
    failing pair counts as chart sensitive when the opposite lift of the
    second endpoint does stay in the region.
    """
    ids = [region] if isinstance(region, int) else list(region)
    regs = atlas.regions
    members = []
    for r in ids:
        members.extend(regs[r].members)
    if len(members) < 2:
        return ConvexityReport(region, 0, [], ConvexityVerdict.TRIVIAL)
    X = atlas.config.X
    vec = _vec_model(atlas)
    if vec and reference is None:
        reference = reference_point(atlas, seed, chart)
    rng = make_rng(seed, "convexity.pairs")
    failures = []
    sensitive = 0
    skipped = 0
    for _ in range(trials):
        i, j = (int(x) for x in rng.choice(members, size=2, replace=False))
        try:
            ok, w = segment_in_region(X, atlas.spaces[i], atlas.spaces[j], atlas, reference)
        except (ZeroFormError, DegenerateInputError):
            skipped += 1
            continue
        if ok:
            continue
        if w.first_confirmed is None:
            # unconfirmed roots (multiple roots, rank drop) prove nothing
            skipped += 1
            continue
        if vec:
            u0 = list(atlas.spaces[i].matrix[0])
            u1 = _lift(list(atlas.spaces[j].matrix[0]), reference)
            other = _vector_wall(atlas, _lift(u0, reference), [-x for x in u1])
            if other.stays_in_region():
                sensitive += 1
        failures.append(_witness(atlas, i, j, w))
    verdict = ConvexityVerdict.NON_CONVEX_WITNESS if failures else ConvexityVerdict.CONVEX_UP_TO_SAMPLING
    ref = [str(x) for x in reference] if reference is not None else None
    return ConvexityReport(region, trials, failures, verdict, ref, chart, sensitive, skipped)


# ---------------------------------------------------------------------------
# slices
# ---------------------------------------------------------------------------

@dataclass
class SliceSpec:
    E: LinSpace
    curve: VarietySpec
    squarefree: bool
    factors: list = field(default_factory=list)

    @property
    def degenerate(self):
        return not self.squarefree or len(self.factors) > 1

    def to_json(self):
        return {"E": linspace_to_json(self.E), "curve": self.curve.to_json(),
                "squarefree": self.squarefree, "factors": self.factors,
                "degenerate": self.degenerate}


def plane_basis(normal):
    """Integer row basis of the plane {normal . x = 0} in P^3."""
    rows = kernel_basis([list(normal)])
    out = []
    for r in rows:
        den = 1
        for v in r:
            den = den * Fraction(v).denominator // np.gcd(den, Fraction(v).denominator)
        out.append([Fraction(v) * den for v in r])
    return LinSpace(out)


def restrict_to_slice(X: VarietySpec, E) -> SliceSpec:
    """The plane curve F(y E) cut out on the plane E (3 x 4 rows, or a normal vector)."""
    if X.kind != HYPERSURFACE or X.n != 4:
        raise InputError("slices need a surface in P^3")
    if not isinstance(E, LinSpace):
        E = LinSpace(E) if len(E) == 3 and hasattr(E[0], "__len__") else plane_basis(E)
    if E.k != 3:
        raise InputError("a slice plane needs a 3 x 4 matrix")
    G = X.equations[0].compose_linear(E.matrix)
    if G.is_zero():
        raise ZeroFormError("the plane lies on the surface")
    G = G.integer_primitive()
    gens = sympy.symbols("y0:3")
    P = sympy.Poly.from_dict({e: int(c) for e, c in G.terms.items()}, *gens)
    _, facs = P.factor_list()
    squarefree = all(m == 1 for _, m in facs)
    factors = [MPoly(3, {tuple(e): Fraction(int(c)) for e, c in f.terms()}).to_string()
               for f, _ in facs]
    curve = VarietySpec(3, HYPERSURFACE, [G], name=f"{X.name}_slice" if X.name else "slice")
    return SliceSpec(E, curve, squarefree, factors)


@dataclass
class SliceReport:
    slice: SliceSpec
    lines_checked: int
    mismatches: list
    avoidant_components: int | None
    convexity: list
    skipped: bool
    atlas_regions: int | None = None

    @property
    def ok(self):
        return not self.skipped and not self.mismatches and all(
            r.verdict != ConvexityVerdict.NON_CONVEX_WITNESS for r in self.convexity)

    def to_json(self):
        return {"slice": self.slice.to_json(), "lines_checked": self.lines_checked,
                "mismatches": self.mismatches, "avoidant_components": self.avoidant_components,
                "atlas_regions": self.atlas_regions,
                "convexity": [r.to_json() for r in self.convexity], "skipped": self.skipped,
                "ok": self.ok}


def slice_consistency_check(X: VarietySpec, E, trials=500, seed=0, atlas_samples=1500,
                            convexity_trials=200, strict=True) -> SliceReport:
    """Compare the ambient and intrinsic classifications of lines in a plane slice.

    (a) random intrinsic lines B (2 x 3) are classified against the plane curve
    and, as B E, against X; (b) the sliced avoidance locus is built as a
    dual-plane atlas and each avoidant region is tested for convexity.
    A degenerate slice (reducible or non-squarefree section) is skipped.
    """
    S = E if isinstance(E, SliceSpec) else restrict_to_slice(X, E)
    if S.degenerate:
        return SliceReport(S, 0, [], None, [], True)
    rng = make_rng(seed, "slice.lines")
    mismatches = []
    E_rows = S.E.matrix
    for _ in range(trials):
        B = random_space(2, 3, rng, 9)
        amb = [[sum(B.matrix[r][j] * E_rows[j][c] for j in range(3)) for c in range(4)]
               for r in range(2)]
        c_amb = classify_line(X, LinSpace(amb, check=False))
        c_int = classify_line(S.curve, B)
        if c_amb.label != c_int.label:
            mismatches.append({"B": linspace_to_json(B), "ambient": c_amb.label,
                               "intrinsic": c_int.label})
    if mismatches and strict:
        raise SlicingSoundnessError(f"{len(mismatches)} slice classification mismatches")
    atlas = build_atlas(AtlasConfig(S.curve, k=2, samples=atlas_samples, seed=seed, model="dual"))
    reports = [test_region_convexity(atlas, r.id, convexity_trials, seed)
               for r in atlas.regions if r.verdict == Verdict.AVOIDANT]
    return SliceReport(S, trials, mismatches, atlas.avoidant_region_count, reports, False,
                       atlas.region_count)
