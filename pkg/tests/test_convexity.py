from fractions import Fraction

import pytest
import sympy

from avoidance import catalog
from avoidance import classify as cl
from avoidance import convexity as cv
from avoidance.classify import VarietySpec, Verdict, classify_line
from avoidance.grassmann import LinSpace
from avoidance.poly import ZeroFormError, parse_poly
from avoidance.regions import AtlasConfig, build_atlas


@pytest.fixture(scope="module")
def circles():
    return build_atlas(AtlasConfig(catalog.named("two_circles"), k=2, samples=1500, seed=0))


def test_segment_to_itself_is_inside():
    X = catalog.named("sphere")
    L = LinSpace([[1, 0, 0, 0], [0, 1, 0, Fraction(1, 2)]])
    ok, w = cv.segment_in_region(X, L, L)
    assert ok and not w.confirmed_roots


def test_sphere_segment_through_the_sphere_fails():
    X = catalog.named("sphere")
    L0 = LinSpace([[1, 0, 0, 0], [0, 1, 0, Fraction(1, 2)]])
    L1 = LinSpace([[1, 0, 0, 0], [0, -1, 0, Fraction(1, 2)]])
    assert classify_line(X, L0).verdict == classify_line(X, L1).verdict == Verdict.AVOIDANT
    # the chart segment stays avoidant: the avoidance locus is connected
    assert cv.segment_in_region(X, L0, L1)[0]
    ok, w = cv.segment_in_region(X, L0, L1, seg=cl.Segment(L0.matrix, L1.matrix))
    assert not ok and w.first_confirmed is not None
    # the midpoint of the matrix segment meets the sphere
    mid = LinSpace([[1, 0, 0, 0], [0, 0, 0, 1]])
    assert classify_line(X, mid).verdict == Verdict.UNAVOIDANT


def test_circles_regions_and_union(circles):
    assert (circles.region_count, circles.avoidant_region_count) == (5, 2)
    av = [r.id for r in circles.regions if r.verdict == Verdict.AVOIDANT.value]
    for r in av:
        rep = cv.test_region_convexity(circles, r, trials=100, seed=1)
        assert rep.verdict == cv.ConvexityVerdict.CONVEX_UP_TO_SAMPLING
    union = cv.test_region_convexity(circles, av, trials=100, seed=1)
    assert union.verdict == cv.ConvexityVerdict.NON_CONVEX_WITNESS
    assert all(f["confirmed"] for f in union.failures)


def test_cross_region_segment_has_confirmed_root(circles):
    av = [r for r in circles.regions if r.verdict == Verdict.AVOIDANT.value]
    ref = cv.reference_point(circles)
    a, b = (circles.spaces[r.representative] for r in av)
    ok, w = cv.segment_in_region(circles.config.X, a, b, circles, ref)
    assert not ok and w.first_confirmed is not None


def test_trivial_region_report(circles):
    X = circles.config.X
    tiny = build_atlas(AtlasConfig(X, k=2, samples=2, seed=0))
    assert tiny.regions[0].member_count == 1
    assert cv.test_region_convexity(tiny, 0).verdict == cv.ConvexityVerdict.TRIVIAL


def _sympy_slice_factors(X, E):
    xs = sympy.symbols("x0:4")
    ys = sympy.symbols("y0:3")
    F = X.equations[0]
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** k for x, k in zip(xs, e)])
               for e, c in F.terms.items())
    sub = {xs[c]: sum(sympy.Rational(str(E.matrix[j][c])) * ys[j] for j in range(3)) for c in range(4)}
    _, facs = sympy.factor_list(sympy.expand(expr.subs(sub, simultaneous=True)), *ys)
    return sorted((str(sympy.Poly(f, *ys).monic()), m) for f, m in facs)


def test_torus_coordinate_slice_is_two_conics():
    X = catalog.named("torus")
    S = cv.restrict_to_slice(X, [1, 0, 0, 0])
    assert S.degenerate and S.squarefree and len(S.factors) == 2
    ys = sympy.symbols("y0:3")
    ours = sorted((str(sympy.Poly(parse_poly(f, 3).to_string().replace("x", "y"), *ys).monic()), 1)
                  for f in S.factors)
    assert ours == _sympy_slice_factors(X, S.E)
    rep = cv.slice_consistency_check(X, [1, 0, 0, 0])
    assert rep.skipped and not rep.ok


def test_generic_torus_slice_is_irreducible():
    X = catalog.named("torus")
    S = cv.restrict_to_slice(X, [1, -3, 3, 0])
    assert not S.degenerate
    assert len(_sympy_slice_factors(X, S.E)) == 1


def test_sphere_slice():
    X = catalog.named("sphere")
    rep = cv.slice_consistency_check(X, [1, 2, -1, 1], trials=100, atlas_samples=300,
                                     convexity_trials=50)
    assert rep.ok and rep.lines_checked == 100
    assert rep.slice.curve.degrees == (2,)
    assert rep.avoidant_components == 1


def test_plane_on_the_surface_is_rejected():
    X = VarietySpec(4, "hypersurface", ["x0*(x1^2 - x2*x3)"])
    with pytest.raises(ZeroFormError):
        cv.restrict_to_slice(X, [1, 0, 0, 0])
