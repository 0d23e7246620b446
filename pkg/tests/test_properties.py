"""Property suites over random inputs (the full-size runs live in test_acceptance)."""
from fractions import Fraction
from itertools import combinations_with_replacement

from hypothesis import assume, given, settings, strategies as st

from avoidance import catalog
from avoidance import classify as cl
from avoidance.classify import VarietySpec, Verdict
from avoidance.grassmann import LinSpace, rank
from avoidance.poly import (BinForm, MPoly, ZeroFormError, discriminant, is_squarefree,
                            real_projective_roots)

small = st.integers(-5, 5)


def monomials(d, n):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


@st.composite
def forms(draw, d, n=4):
    mons = monomials(d, n)
    cs = draw(st.lists(small, min_size=len(mons), max_size=len(mons)))
    F = MPoly(n, dict(zip(mons, cs)))
    assume(not F.is_zero())
    return F


@st.composite
def lines(draw, n=4):
    rows = draw(st.lists(st.lists(st.integers(-7, 7), min_size=n, max_size=n), min_size=2, max_size=2))
    assume(rank(rows) == 2)
    return LinSpace(rows)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([1, 3, 5]).flatmap(lambda d: forms(d)), lines())
def test_odd_degree_never_avoidant(F, L):
    c = cl.classify_line(VarietySpec(4, "hypersurface", [F]), L)
    assert c.verdict != Verdict.AVOIDANT


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7).flatmap(lambda d: st.lists(small, min_size=d + 1, max_size=d + 1)))
def test_binary_form_laws(c):
    f = BinForm(len(c) - 1, c)
    assume(not f.is_zero())
    d = len(c) - 1
    if d % 2 == 1:
        assert real_projective_roots(f) >= 1
    if d >= 2:
        assert (discriminant(f) == 0) == (not is_squarefree(f))
    # positive rescaling changes nothing
    g = BinForm(d, [3 * x for x in c])
    assert real_projective_roots(g) == real_projective_roots(f)


@settings(max_examples=100, deadline=None)
@given(forms(2), forms(2), lines())
def test_union_law(F, G, L):
    try:
        cf = cl.classify_line(VarietySpec(4, "hypersurface", [F]), L)
        cg = cl.classify_line(VarietySpec(4, "hypersurface", [G]), L)
    except ZeroFormError:
        return
    cu = cl.set_operations_check(F, G, L)
    if not (cf.transverse and cg.transverse):
        assert cu.verdict != Verdict.AVOIDANT
        return
    if cu.verdict == Verdict.NONTRANSVERSE:
        # only a shared root can spoil transversality of the union
        assert cu.witness.get("shared_root")
        return
    assert (cu.verdict == Verdict.AVOIDANT) == (cf.verdict == cg.verdict == Verdict.AVOIDANT)
    assert cu.real_points == cf.real_points + cg.real_points


@settings(max_examples=80, deadline=None)
@given(forms(4), lines(), st.integers(1, 9), st.integers(-4, 4))
def test_scale_and_row_operation_invariance(F, L, c, m):
    X = VarietySpec(4, "hypersurface", [F])
    try:
        base = cl.classify_line(X, L).label
    except ZeroFormError:
        return
    Y = VarietySpec(4, "hypersurface", [F * Fraction(-c)])
    r0, r1 = L.matrix
    M = LinSpace([[c * a for a in r0], [b + m * a for a, b in zip(r0, r1)]])
    assert cl.classify_line(Y, M).label == base


@settings(max_examples=40, deadline=None)
@given(lines(), lines())
def test_wall_soundness_on_grid(L0, L1):
    # every grid point outside the isolating intervals carries its gap's label
    X = catalog.named("torus")
    try:
        w = cl.wall_polynomial(X, L0, L1, seg=cl.Segment(L0.matrix, L1.matrix))
    except cl.SegmentInDiscriminant:
        return
    assume(not w.rank_drop)
    for k in range(17):
        t = Fraction(k, 16)
        if any(lo <= t <= hi for lo, hi in w.intervals):
            continue
        gap = sum(1 for lo, hi in w.intervals if hi < t)
        M = [[a + t * (b - a) for a, b in zip(ra, rb)] for ra, rb in zip(L0.matrix, L1.matrix)]
        assert cl.classify_line(X, LinSpace(M)).label == w.gap_labels[gap]


@settings(max_examples=60, deadline=None)
@given(forms(2), lines())
def test_exactly_one_verdict(F, L):
    X = VarietySpec(4, "hypersurface", [F])
    c = cl.classify_line(X, L)
    assert c.verdict in set(Verdict)
    assert (c.real_points is not None) == (c.verdict in (Verdict.AVOIDANT, Verdict.UNAVOIDANT))
