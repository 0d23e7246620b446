from fractions import Fraction

import numpy as np
import pytest
import sympy

from avoidance import catalog
from avoidance import forms
from avoidance.classify import VarietySpec, classify_line, Verdict
from avoidance.grassmann import LinSpace, make_rng, random_space
from avoidance.poly import InputError, MPoly, parse_poly


def test_circle_dual_matches_fitted_conic():
    # oracle: tangent lines of the parametrized circle, conic fitted through 6 of them
    F = parse_poly("x0^2 + x1^2 - x2^2", 3)
    D = forms.dual_plane_curve(F, seed=0)
    tangents = []
    for k in range(6):
        t = Fraction(k - 2, 3)
        p = (1 - t * t, 2 * t, 1 + t * t)
        tangents.append([2 * p[0], 2 * p[1], -2 * p[2]])
    mons = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    A = sympy.Matrix([[sympy.Rational(u[0]) ** a * sympy.Rational(u[1]) ** b * sympy.Rational(u[2]) ** c
                       for a, b, c in mons] for u in tangents])
    null = A.nullspace()
    assert len(null) == 1
    v = null[0] / null[0][0]
    fitted = MPoly(3, {m: Fraction(str(c)) for m, c in zip(mons, v)})
    got = D.dual * (1 / D.dual.terms[(2, 0, 0)])
    assert got == fitted
    assert D.degree == 2


def test_fermat_cubic_dual_degree_and_tangent_count():
    F = parse_poly("x0^3 + x1^3 + x2^3", 3)
    D = forms.dual_plane_curve(F, seed=0)
    assert D.degree == 6
    # oracle: 6 tangent lines from a generic point p (polar curve times F, Bezout)
    p = np.array([0.3, -1.7, 0.9])
    x = sympy.symbols("x")
    f = x ** 3 + x ** 2 * 0 + 1 + sympy.Symbol("y") ** 3
    y = sympy.Symbol("y")
    f = x ** 3 + y ** 3 + 1
    polar = 3 * p[0] * x ** 2 + 3 * p[1] * y ** 2 + 3 * p[2]
    r = sympy.Poly(sympy.resultant(f, polar, y), x)
    roots = np.roots([float(c) for c in r.all_coeffs()])
    assert len(roots) == 6
    for xr in roots:
        ys = np.roots([3 * p[1], 0, 3 * p[0] * xr ** 2 + 3 * p[2]])
        yr = min(ys, key=lambda yy: abs(xr ** 3 + yy ** 3 + 1))
        u = np.array([3 * xr ** 2, 3 * yr ** 2, 3.0])
        val = sum(float(c) * np.prod(u ** np.array(e)) for e, c in D.dual.terms.items())
        scale = sum(abs(float(c)) * np.prod(np.abs(u) ** np.array(e)) for e, c in D.dual.terms.items())
        assert abs(val) < 1e-8 * scale


def test_trott_dual_counts():
    D = forms.dual_plane_curve(catalog.named("trott").equations[0], seed=0)
    assert (D.degree, D.monomial_count) == (12, 28)
    assert forms.verify_dual(D.source, D.dual, seed=3) == []


@pytest.mark.parametrize("text", ["x0^2 + x1^2 - x2^2", "x0^3 + x1^3 + x2^3",
                                  "x0^3 - x0*x2^2 - x1^2*x2"])
def test_biduality(text):
    F = parse_poly(text, 3)
    D = forms.dual_plane_curve(F, seed=1)
    assert forms.biduality_check(F, D.dual, seed=2, lines=10) == 0


def test_dual_form_json_round_trip():
    D = forms.dual_plane_curve(parse_poly("x0^2 + 2*x1^2 - x2^2", 3))
    obj = D.to_json()
    assert forms.form_from_json(obj) == D.dual
    assert obj["term_count"] == D.monomial_count


def test_chow_form_of_a_line():
    X = VarietySpec(4, "ci_curve", ["x0", "x1"])
    C = forms.chow_form_space_curve(X, seed=0)
    assert C.degree == 1 and C.term_count == 1
    assert set(C.chow.terms) == {(1, 0, 0, 0, 0, 0)}


def test_chow_form_two_quadrics():
    X = VarietySpec(4, "ci_curve", ["x0^2 + x1^2 - x2^2 - x3^2", "x0*x1 - 2*x2*x3 + x1*x3"])
    C = forms.chow_form_space_curve(X, seed=0)
    assert C.degree == 4
    rng = make_rng(9, "test.chow")
    for _ in range(30):
        L = random_space(2, 4, rng, 7)
        direct = forms.chow_value(X, L.matrix)
        assert (C(L.pluecker()) == 0) == (direct == 0)


def test_sextic_chow_form_vanishing_both_ways():
    X = catalog.named("sextic_curve")
    C = forms.chow_form_space_curve(X, seed=0)
    assert C.degree == 6
    assert forms.pluecker_normal_form(C.chow) == C.chow
    rng = make_rng(5, "test.chow.sextic")
    for _ in range(100):
        L = random_space(2, 4, rng, 7)
        assert (C(L.pluecker()) == 0) == (forms.chow_value(X, L.matrix) == 0)
    # lines through exact curve points
    par = X.parametrization
    for s in (Fraction(1, 3), Fraction(-2, 5), Fraction(7, 2)):
        e = len(par[0]) - 1
        p = [sum(g[i] * s ** i for i in range(e + 1)) for g in par]
        q = [int(v) for v in rng.integers(-9, 10, size=4)]
        L = LinSpace([p, q])
        assert C(L.pluecker()) == 0


def test_reduced_basis_excludes_the_quadric_monomial():
    for D in (2, 3, 6):
        basis = forms.reduced_pluecker_basis(D)
        assert all(not (m[2] >= 1 and m[3] >= 1) for m in basis)
    assert len(forms.reduced_pluecker_basis(6)) == 336


def test_hurwitz_degree_formulas():
    assert forms.hurwitz_degree(4, 0) == 6
    # oracle: for the rational normal curve of degree e the Hurwitz form is the
    # discriminant of a binary form of degree e, homogeneous of degree 2e - 2
    a = sympy.symbols("a0:9")
    x = sympy.Symbol("x")
    for e in range(2, 8):
        f = sum(a[i] * x ** i for i in range(e + 1))
        disc = sympy.Poly(sympy.discriminant(f, x), *a[:e + 1])
        assert forms.hurwitz_degree(e, 0) == disc.total_degree() == 2 * e - 2
    for d in range(2, 8):
        assert forms.hurwitz_degree(d, (d - 1) * (d - 2) // 2) == d * (d - 1)
    with pytest.raises(InputError):
        forms.hurwitz_degree(1, 0)


def test_named_form_checksums():
    assert forms.NAMED_FORM_TEXT["veronese_symdet"] == "p_2^2p_3-p_1p_2p_4+p_0p_4^2+p_1^2p_5-4p_0p_3p_5"
    assert forms.NAMED_FORM_TEXT["segre_hyperdet"] == "p_{12}^2+p_{03}^2-2p_{02}p_{13}-2p_{01}p_{23}"
    assert forms.named_form_checksum("veronese_symdet") == \
        "9ca2187471875c76e5b8fd43a178bd833419afc34558c25915aaea619cef47ff"
    assert forms.named_form_checksum("segre_hyperdet") == \
        "b0a94cabbb96eca838d036d121d1fd7a438ccdc89701793915ae34104a358058"


def test_named_form_values():
    assert forms.eval_named_form("veronese_symdet", [1, 0, 0, 1, 0, 1]) == -4
    H = forms.named_form("segre_hyperdet")
    assert H.degree() == 2 and len(H.terms) == 4
    # a zero of the form
    assert forms.eval_named_form("segre_hyperdet", [1, 0, 0, 0, 0, 0]) == 0
    with pytest.raises(InputError):
        forms.eval_named_form("nope", [0] * 6)


def test_segre_hyperdet_sign_matches_classification():
    X = catalog.named("segre")
    rng = make_rng(1, "test.segre")
    seen = set()
    for _ in range(200):
        L = random_space(2, 4, rng, 6)
        c = classify_line(X, L)
        v = forms.eval_named_form("segre_hyperdet", L.pluecker())
        if c.verdict == Verdict.AVOIDANT:
            assert v < 0
        elif c.verdict == Verdict.UNAVOIDANT:
            assert v > 0
        seen.add(c.verdict)
    assert {Verdict.AVOIDANT, Verdict.UNAVOIDANT} <= seen
