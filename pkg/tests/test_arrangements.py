import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from avoidance.arrangements import (Arrangement, CharPoly, brute_force_regions, char_poly_generic,
                                    lattice_char_poly, max_avoidance_regions,
                                    projective_region_count)
from avoidance.poly import InputError, parse_poly


def test_char_poly_examples():
    assert str(char_poly_generic(1, 3)) == "t^2 - t"
    assert str(char_poly_generic(3, 3)) == "t^2 - 3t + 3"
    assert str(char_poly_generic(2, 3)) == "t^2 - 2t + 1"
    assert char_poly_generic(5, 4).coeffs == (1, -5, 10, -10)


@pytest.mark.parametrize("l,want", [(1, 1), (2, 2), (3, 4)])
def test_region_count_examples(l, want):
    assert projective_region_count(char_poly_generic(l, 3)) == want


def test_line_examples_by_brute_force():
    assert brute_force_regions(Arrangement([[1, 0, 0]])).regions == 1
    assert brute_force_regions(Arrangement([[1, 0, 0], [0, 1, 0]])).regions == 2
    arr = Arrangement.from_forms([parse_poly(s, 3) for s in ("x0", "x1", "x0 + x1 + x2")])
    assert brute_force_regions(arr).regions == 4


def _classical(l, n):
    # regions of a central generic arrangement of l hyperplanes in R^n, halved
    return sum(math.comb(l - 1, i) for i in range(n)) if l else 1


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("l", range(0, 7))
def test_formula_equals_brute_force(l, n):
    arr = Arrangement.random(l, n, seed=10 * l + n)
    want = projective_region_count(char_poly_generic(l, n))
    got = brute_force_regions(arr, seed=l, expected=want)
    assert got.regions == want == _classical(l, n)
    assert not got.coverage_warning


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("l", range(1, 7))
def test_whitney_expansion_matches_generic_formula(l, n):
    arr = Arrangement.random(l, n, seed=l + 100 * n)
    assert lattice_char_poly(arr) == char_poly_generic(l, n)


def test_non_generic_arrangement_lattice():
    # three concurrent lines: frame lines through (0:0:1)
    arr = Arrangement([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    chi = lattice_char_poly(arr)
    assert projective_region_count(chi) == brute_force_regions(arr).regions == 3


def test_bound_examples():
    assert max_avoidance_regions(1, 3) == (Fraction(1, 2), 0)
    assert max_avoidance_regions(2, 3) == (Fraction(1), 1)
    # 1 + 4 + 6 + 4 + C(3, 3)
    assert max_avoidance_regions(4, 3) == (Fraction(4), 4)
    assert max_avoidance_regions(3, 3) == (Fraction(2), 2)
    with pytest.raises(InputError):
        max_avoidance_regions(0, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bound_is_monotone(n):
    vals = [max_avoidance_regions(m, n)[0] for m in range(1, 21)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.integers(-5, 5))
def test_char_poly_evaluation(coeffs, t):
    chi = CharPoly(tuple(coeffs))
    x = sympy.Symbol("x")
    want = sympy.Poly(coeffs, x).eval(t) if any(coeffs) else 0
    assert chi(t) == int(want)
