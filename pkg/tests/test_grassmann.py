from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from avoidance.grassmann import (ChartPoint, LinSpace, Pencil, chart_point_matrix, kernel_basis,
                                 linspace_from_json, linspace_to_json, make_rng, pencil_eval,
                                 pluecker_from_matrix, random_space, rank, rref,
                                 schubert_hyperplane, segment)
from avoidance.poly import DegenerateInputError

small = st.integers(-6, 6)


def matrices(k, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=k, max_size=k)


@settings(max_examples=60, deadline=None)
@given(matrices(2, 4))
def test_pluecker_relation_gr24(m):
    if rank(m) < 2:
        return
    p01, p02, p03, p12, p13, p23 = pluecker_from_matrix(m)
    assert p01 * p23 - p02 * p13 + p03 * p12 == 0


@settings(max_examples=40, deadline=None)
@given(matrices(3, 5), matrices(3, 3))
def test_pluecker_scales_by_determinant(m, g):
    # oracle: sympy minors; a change of basis g scales all minors by det g
    if rank(m) < 3 or rank(g) < 3:
        return
    M = sympy.Matrix(m)
    want = [M.extract([0, 1, 2], list(I)).det() for I in combinations(range(5), 3)]
    assert list(pluecker_from_matrix(m)) == [Fraction(int(w)) for w in want]
    gm = [[int(v) for v in row] for row in (sympy.Matrix(g) * M).tolist()]
    det = sympy.Matrix(g).det()
    assert list(pluecker_from_matrix(gm)) == [Fraction(int(w * det)) for w in want]
    assert LinSpace(gm) == LinSpace(m)


@settings(max_examples=40, deadline=None)
@given(matrices(2, 5))
def test_rref_and_kernel(m):
    R, piv = rref(m)
    r = rank(m)
    assert len(piv) == r == sympy.Matrix(m).rank()
    K = kernel_basis(m)
    assert len(K) == 5 - r
    for v in K:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_rank_deficient_is_rejected():
    with pytest.raises(DegenerateInputError):
        LinSpace([[1, 2, 3], [2, 4, 6]])


def test_segment_stays_in_chart():
    a = LinSpace([[1, 0, 2, 3], [0, 1, -1, 5]])
    b = LinSpace([[2, 1, 0, 1], [1, -3, 1, 1]])
    seg = segment(a, b)
    for t in (0, Fraction(1, 3), Fraction(1, 2), 1):
        L = pencil_eval(seg, t)
        assert rank(L.matrix) == 2
    assert pencil_eval(seg, 0) == a
    assert pencil_eval(seg, 1) == b


def test_pencil_contains_w():
    P = Pencil(((1, 0, 0, 0),), (0, 1, 0, 0), (0, 0, 1, 1))
    L = pencil_eval(P, Fraction(2, 3))
    assert L == LinSpace([[1, 0, 0, 0], [0, 1, Fraction(2, 3), Fraction(2, 3)]])


def test_chart_points():
    L = chart_point_matrix(ChartPoint(1, (1, 2, 3, 4)), 4)
    assert L.pluecker()[0] == 1
    L2 = chart_point_matrix(ChartPoint(2, (5, 7, 9)), 4)
    assert L2.pluecker()[0] == 0 and L2.pluecker()[1] == 1


def test_schubert_hyperplane_is_meeting_condition():
    fixed = [[0, 0, 1, 0], [0, 0, 0, 1]]
    c = schubert_hyperplane(fixed, 2)
    rng = make_rng(3, "test")
    for _ in range(20):
        L = random_space(2, 4, rng, 6)
        lhs = sum(a * b for a, b in zip(c, L.pluecker()))
        M = sympy.Matrix([list(r) for r in L.matrix] + fixed)
        assert lhs == Fraction(str(M.det()))


def test_make_rng_is_reproducible_and_tagged():
    a = make_rng(5, "x").integers(0, 10 ** 9, size=4)
    b = make_rng(5, "x").integers(0, 10 ** 9, size=4)
    c = make_rng(5, "y").integers(0, 10 ** 9, size=4)
    d = make_rng(5, "x", 1).integers(0, 10 ** 9, size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c) and not np.array_equal(a, d)


def test_random_space_heights():
    L = random_space(2, 4, 0, 3)
    for r in L.matrix:
        for v in r:
            assert abs(v.numerator) <= 3 and 1 <= v.denominator <= 3


def test_json_round_trip():
    L = LinSpace([[1, Fraction(-2, 3), 0, 5], [0, 1, Fraction(7, 2), 0]])
    obj = linspace_to_json(L)
    back = linspace_from_json(obj)
    assert back.matrix == L.matrix
    assert [str(v) for v in back.pluecker()] == [str(Fraction(s)) for s in obj["pluecker"]]
