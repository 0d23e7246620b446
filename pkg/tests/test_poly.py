from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from avoidance.poly import (BinForm, MPoly, ParseError, UPoly, discriminant, generic_discriminant,
                            isolate_real_roots, isolate_unit_interval, parse_poly,
                            real_projective_roots, resultant, resultant_binforms, sturm_count)

s0, s1, t = sympy.symbols("s0 s1 t")
ints = st.integers(-20, 20)


def _sym(p: MPoly):
    xs = sympy.symbols(f"x0:{p.nvars}")
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** k for x, k in zip(xs, e)])
               for e, c in p.terms.items()), xs


def test_parse_and_print_round_trip():
    p = parse_poly("x0^2*x3 - 2*x1*(x2 + x3)^2 + 7", 4)
    q = parse_poly(p.to_string(), 4)
    assert p == q
    expr, xs = _sym(p)
    assert sympy.expand(expr - (xs[0] ** 2 * xs[3] - 2 * xs[1] * (xs[2] + xs[3]) ** 2 + 7)) == 0


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as e:
        parse_poly("x0 + * x1", 2)
    assert e.value.position == 5
    with pytest.raises(ParseError):
        parse_poly("x3", 3)


def test_quadratic_discriminant():
    assert discriminant(BinForm(2, [1, 3, 2])) == 1
    assert discriminant(BinForm(2, [1, 0, 1])) == -4
    assert generic_discriminant(2).to_string() in ("x1^2 - 4*x0*x2", "-4*x0*x2 + x1^2")


@settings(max_examples=40, deadline=None)
@given(st.lists(ints, min_size=3, max_size=6))
def test_discriminant_matches_sympy(c):
    d = len(c) - 1
    if c[0] == 0:
        c[0] = 1
    f = sum(ci * s0 ** (d - i) * s1 ** i for i, ci in enumerate(c))
    want = sympy.discriminant(f.subs(s1, 1), s0)
    assert discriminant(BinForm(d, c)) == Fraction(int(want))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=9))
def test_high_degree_discriminant_with_vanishing_ends(c):
    # oracle: sympy on f(s0, s1 + k s0) for some k >= 2 making the s0^d
    # coefficient f(1, k) nonzero; any unimodular substitution preserves the value
    c[0] = 0
    d = len(c) - 1
    f = sum(ci * s0 ** (d - i) * s1 ** i for i, ci in enumerate(c))
    if f == 0:
        return
    k = next(k for k in range(2, d + 3) if f.subs({s0: 1, s1: k}) != 0)
    g = sympy.expand(f.subs(s1, s1 + k * s0, simultaneous=True))
    want = sympy.discriminant(g.subs(s1, 1), s0)
    assert discriminant(BinForm(d, c)) == Fraction(int(want))


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=2, max_size=7))
def test_sturm_count_matches_sympy(c):
    p = UPoly(c)
    if p.degree < 1:
        return
    expr = sum(ci * t ** i for i, ci in enumerate(c))
    want = len(set(sympy.real_roots(sympy.Poly(expr, t))))
    assert sturm_count(p) == want
    ivs = isolate_real_roots(p)
    assert len(ivs) == want
    for lo, hi in ivs:
        assert lo < hi


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=2, max_size=7))
def test_unit_interval_isolation(c):
    p = [x for x in c]
    while p and p[-1] == 0:
        p.pop()
    if len(p) < 2:
        return
    expr = sum(ci * t ** i for i, ci in enumerate(p))
    want = sorted({r for r in sympy.real_roots(sympy.Poly(expr, t)) if 0 < r < 1})
    ivs = isolate_unit_interval(p)
    assert len(ivs) == len(want)
    for (lo, hi), r in zip(ivs, want):
        assert lo <= r <= hi


@settings(max_examples=40, deadline=None)
@given(st.lists(ints, min_size=2, max_size=6))
def test_projective_real_roots(c):
    d = len(c) - 1
    f = BinForm(d, c)
    if f.is_zero():
        return
    aff = sum(ci * s0 ** (d - i) for i, ci in enumerate(c))
    if sympy.Poly(aff, s0).is_zero:
        return
    finite = len(set(sympy.real_roots(sympy.Poly(aff, s0)))) if sympy.degree(aff, s0) > 0 else 0
    at_inf = 1 if c[0] == 0 else 0
    assert real_projective_roots(f) == finite + at_inf


@settings(max_examples=40, deadline=None)
@given(st.lists(ints, min_size=2, max_size=5), st.lists(ints, min_size=2, max_size=5))
def test_binary_resultant_matches_root_product(a, b):
    # oracle: Res(f, g) = lc(f)^deg g * prod g(alpha) over the roots of f
    if a[0] == 0 or b[0] == 0:
        return
    roots = np.roots(a)
    want = a[0] ** (len(b) - 1) * np.prod([np.polyval(b, r) for r in roots])
    got = resultant_binforms(BinForm(len(a) - 1, a), BinForm(len(b) - 1, b))
    assert got.denominator == 1
    assert abs(complex(want) - int(got)) <= 1e-6 * max(1.0, abs(int(got)))


def test_multivariate_resultant_matches_sympy():
    p = parse_poly("x0^2 + x1^2 - x2^2", 3)
    q = parse_poly("x0*x1 - x2^2 + 3*x0*x2", 3)
    r = resultant(p, q, 2)
    ep, xs = _sym(p)
    eq, _ = _sym(q)
    want = sympy.resultant(ep, eq, xs[2])
    er, _ = _sym(r)
    assert sympy.expand(er - want) == 0


def test_compose_linear_is_substitution():
    F = parse_poly("x0^3 - x1*x2^2 + 2*x0*x1*x2", 3)
    M = [[1, 2, 0], [0, -1, 3]]
    G = F.compose_linear(M)
    eF, xs = _sym(F)
    ys = sympy.symbols("y0:2")
    sub = {xs[i]: sum(ys[j] * M[j][i] for j in range(2)) for i in range(3)}
    eG, _ = _sym(G)
    eG = eG.subs({sympy.Symbol(f"x{j}"): ys[j] for j in range(2)}, simultaneous=True)
    assert sympy.expand(eF.subs(sub, simultaneous=True) - eG) == 0


def test_mpoly_ring_operations():
    p = parse_poly("x0 + 2*x1", 2)
    q = parse_poly("x0 - x1", 2)
    assert (p * q) == parse_poly("x0^2 + x0*x1 - 2*x1^2", 2)
    assert (p + q) == parse_poly("2*x0 + x1", 2)
    assert (p * q).diff(0) == parse_poly("2*x0 + x1", 2)
    assert (p * q).eval([Fraction(1, 2), 1]) == Fraction(1, 4) + Fraction(1, 2) - 2
    assert parse_poly("6*x0 + 4*x1", 2).integer_primitive() == parse_poly("3*x0 + 2*x1", 2)
