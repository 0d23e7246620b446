from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from avoidance import catalog
from avoidance import classify as cl
from avoidance.classify import VarietySpec, Verdict
from avoidance.grassmann import LinSpace, kernel_basis, make_rng, random_space
from avoidance.poly import InputError, parse_poly

s = sympy.Symbol("s")


def oracle_line(F, L):
    """Label of F on a line by sympy: substitute s*row0 + row1 and count real roots."""
    xs = sympy.symbols(f"x0:{F.nvars}")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** k for x, k in zip(xs, e)])
               for e, c in F.terms.items())
    r0, r1 = ([sympy.Rational(v.numerator, v.denominator) for v in r] for r in L.matrix)
    f = sympy.expand(expr.subs({x: s * a + b for x, a, b in zip(xs, r0, r1)}, simultaneous=True))
    if f == 0:
        return (Verdict.CONTAINED.value, None)
    P = sympy.Poly(f, s)
    d = F.degree()
    at_inf = 1 if P.degree() < d else 0
    if d - P.degree() >= 2 or (P.degree() >= 1 and sympy.discriminant(P) == 0):
        return (Verdict.NONTRANSVERSE.value, None)
    real = len(sympy.real_roots(P)) + at_inf if P.degree() >= 1 else at_inf
    if real == 0:
        return (Verdict.AVOIDANT.value, 0)
    return (Verdict.UNAVOIDANT.value, real)


@pytest.mark.parametrize("name", ["sphere", "segre", "torus", "quartic"])
def test_classify_line_matches_sympy_oracle(name):
    X = catalog.named(name)
    rng = make_rng(11, "test.classify")
    for _ in range(40):
        L = random_space(2, 4, rng, 5)
        assert cl.classify_line(X, L).label == oracle_line(X.equations[0], L)


def test_sphere_examples():
    X = catalog.named("sphere")
    assert cl.classify_line(X, LinSpace([[1, 0, 0, 0], [0, 1, 0, 0]])).verdict == Verdict.AVOIDANT
    c = cl.classify_line(X, LinSpace([[1, 0, 0, 0], [0, 0, 0, 1]]))
    assert c.label == (Verdict.UNAVOIDANT.value, 2)
    # tangent line x0 = x3 = ... through (0,0,1,1) along e0
    c = cl.classify_line(X, LinSpace([[0, 0, 1, 1], [1, 0, 0, 0]]))
    assert c.verdict == Verdict.NONTRANSVERSE


def test_contained_line():
    X = catalog.named("segre")
    c = cl.classify_line(X, LinSpace([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert c.verdict == Verdict.CONTAINED


def test_point_classification():
    X = catalog.named("sphere")
    assert cl.classify_point(X, [0, 0, 0, 1]).verdict == Verdict.AVOIDANT
    assert cl.classify_point(X, [1, 0, 0, 1]).verdict == Verdict.UNAVOIDANT


def test_dual_line_agrees_with_line_in_the_plane():
    X = catalog.named("trott")
    rng = make_rng(2, "test.dual")
    for _ in range(30):
        u = [Fraction(int(v)) for v in rng.integers(-9, 10, size=3)]
        if not any(u):
            continue
        L = LinSpace(kernel_basis([u]))
        assert cl.classify_dual_line(X, u).label == cl.classify_line(X, L).label


def test_hyperplane_vs_curve_routes_agree():
    C = catalog.named("sextic_curve")
    rng = make_rng(4, "test.curve")
    agree = 0
    for _ in range(25):
        u = [int(v) for v in rng.integers(-9, 10, size=4)]
        if not any(u):
            continue
        a = cl.classify_hyperplane_vs_curve(C, u, route="param")
        b = cl.classify_hyperplane_vs_curve(C, u, route="resultant", seed=1)
        assert a.label == b.label
        agree += 1
    assert agree >= 15


def test_planes_through_singular_points_are_nontransverse():
    # a node (0:0:0:1) and an isolated real point (0:0:1:0), the latter
    # invisible to real parameters
    C = catalog.named("sextic_curve")
    assert set(cl.singular_points(C)) == {(0, 0, 1, 0), (0, 0, 0, 1)}
    for u in ([1, 2, 0, 3], [-2, -2, 9, 0]):
        for route in ("param", "resultant"):
            assert cl.classify_hyperplane_vs_curve(C, u, route=route).verdict == Verdict.NONTRANSVERSE


def test_wall_polynomial_sphere_confirmed_root():
    X = catalog.named("sphere")
    L0 = LinSpace([[1, 0, 0, 0], [0, 1, 0, Fraction(1, 2)]])
    L1 = LinSpace([[1, 0, 0, 0], [0, -1, 0, Fraction(1, 2)]])
    w = cl.wall_polynomial(X, L0, L1, seg=cl.Segment(L0.matrix, L1.matrix))
    assert w.first_confirmed is not None
    assert w.gap_labels[0] == (Verdict.AVOIDANT.value, 0)
    assert not w.stays_in_region()


def test_wall_polynomial_inside_region():
    X = catalog.named("sphere")
    L0 = LinSpace([[1, 0, 0, 0], [0, 1, 0, Fraction(1, 2)]])
    L1 = LinSpace([[1, 0, 0, 0], [0, 1, 0, Fraction(-1, 2)]])
    w = cl.wall_polynomial(X, L0, L1)
    assert w.stays_in_region()
    assert w.certificate()["gap_labels"][0][0] == "Avoidant"


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_wall_labels_are_those_of_the_family(entries):
    # the label at every gap parameter equals a direct classification
    X = catalog.named("torus")
    A = [entries[:4], [0, 1, 0, 0]]
    B = [[1, 0, 0, 0], entries[4:]]
    try:
        L0, L1 = LinSpace(A), LinSpace(B)
        w = cl.wall_polynomial(X, L0, L1, seg=cl.Segment(L0.matrix, L1.matrix))
    except (InputError, cl.SegmentInDiscriminant):
        return
    if w.rank_drop:
        return
    for t, lab in zip(w.gap_params, w.gap_labels):
        M = [[a + t * (b - a) for a, b in zip(ra, rb)] for ra, rb in zip(L0.matrix, L1.matrix)]
        assert cl.classify_line(X, LinSpace(M)).label == lab


def test_set_operations_union():
    F = parse_poly("x0^2 + x1^2 - x2^2", 3)
    G = parse_poly("x0^2 + x1^2 - 4*x2^2", 3)
    L = LinSpace([[1, 0, 0], [0, 0, 1]])
    c = cl.set_operations_check(F, G, L)
    assert c.label == (Verdict.UNAVOIDANT.value, 4)


def test_variety_validation():
    with pytest.raises(InputError):
        VarietySpec(3, "hypersurface", ["x0^2 + x1"])
    with pytest.raises(InputError):
        VarietySpec(3, "ci_curve", ["x0", "x1"])
    X = VarietySpec.from_json(catalog.named("torus").to_json())
    assert X.degrees == (4,)
