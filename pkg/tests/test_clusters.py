from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from c2d4.clusters import classify_type, cluster_picture, is_semistable, rebalance, semistability, twin_sign
from c2d4.errors import NotSemistable, Unsupported
from c2d4.localdata import local_odd
from c2d4.model import C2D4Curve, CurveError, mobius_transform

odd_p = st.sampled_from([3, 5, 7])


@st.composite
def integral_curves(draw):
    p = draw(odd_p)
    roots = draw(st.lists(st.integers(-60, 60), min_size=6, max_size=6, unique=True))
    c = draw(st.sampled_from([1, -1, 2, p, -p, p * p]))
    try:
        C = C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])))
    except CurveError:
        assume(False)
    return C, p


def _picture(C, p):
    try:
        return cluster_picture(C, p)
    except (NotSemistable, Unsupported):
        assume(False)


def test_q3_example_needs_odd_c():
    roots = [(0, 1), (3, 4), (-3, -2)]
    ok1, why = is_semistable(C2D4Curve.from_roots(1, roots), 3)
    assert not ok1 and "parity" in why
    C3 = C2D4Curve.from_roots(3, roots)
    assert is_semistable(C3, 3) == (True, "semistable")
    pic = cluster_picture(C3, 3)
    assert pic.render() == "((a1 a2 a3)_1 (b1 b2 b3)_1)_0"
    assert str(classify_type(pic, C3.invariants).type) == "1x_11(c)"


@pytest.mark.parametrize(
    "c,roots,p,picture,label",
    [
        (1, [(0, 1), (2, 3), (4, 5)], 7, "(a1 b1 a2 b2 a3 b3)_0", "2(d)"),
        (1, [(0, 49), (1, 2), (3, 4)], 7, "((a1 b1)_2^- a2 b2 a3 b3)_0", "I_4^-(a)"),
        (3, [(0, 49), (1, 2), (3, 4)], 7, "((a1 b1)_2^+ a2 b2 a3 b3)_0", "I_4^+(a)"),
        (1, [(0, 3), (1, 4), (2, 5)], 3, "((a1 b1)_1 (a2 b2)_1 (a3 b3)_1)_0 sign +", "U_{2,2,2}^+(a)"),
        (3, [(0, 3), (1, 4), (2, 5)], 3, "((a1 b1)_1 (a2 b2)_1 (a3 b3)_1)_0 sign -", "U_{2,2,2}^-(a)"),
    ],
)
def test_examples(c, roots, p, picture, label):
    C = C2D4Curve.from_roots(c, roots)
    bal = rebalance(C, p)
    assert bal.picture.render() == picture
    assert str(classify_type(bal.picture, bal.curve.invariants).type) == label


def test_twin_sign_tracks_c():
    roots = [(0, 49), (1, 2), (3, 4)]
    assert twin_sign(C2D4Curve.from_roots(1, roots), 7, {0, 1}) == -1
    assert twin_sign(C2D4Curve.from_roots(3, roots), 7, {0, 1}) == 1


def test_non_semistable_is_unsupported_locally():
    d = local_odd(C2D4Curve.from_roots(1, [(0, 1), (3, 4), (-3, -2)]), 3)
    assert not d.supported and d.verdict is None


@given(integral_curves())
def test_clusters_are_nested_and_depths_match(data):
    C, p = data
    pic = _picture(C, p)
    assert pic.top.size == 6
    for a in pic.clusters:
        for b in pic.clusters:
            assert a.roots <= b.roots or b.roots <= a.roots or not (a.roots & b.roots)
    dist = pic.data.dist
    for i in range(6):
        for j in range(i + 1, 6):
            smallest = min((cl for cl in pic.clusters if {i, j} <= cl.roots), key=lambda cl: cl.size)
            assert smallest.depth == dist[i][j]


@given(integral_curves())
def test_frobenius_permutes_clusters(data):
    C, p = data
    pic = _picture(C, p)
    by_roots = {cl.roots: cl for cl in pic.clusters}
    for cl in pic.clusters:
        img = by_roots[pic.image(cl)]
        assert img.depth == cl.depth


@given(integral_curves(), st.integers(-20, 20))
def test_integral_shift_keeps_picture(data, k):
    C, p = data
    pic = _picture(C, p)
    shifted = mobius_transform(C, ((1, k), (0, 1)))
    other = _picture(shifted, p)
    assert other.render() == pic.render()


@given(integral_curves())
def test_rebalance_is_balanced_and_keeps_semistability(data):
    C, p = data
    pic = _picture(C, p)
    try:
        bal = rebalance(C, p)
    except Unsupported:
        assume(False)
    fives = bal.picture.of_size(5)
    assert bal.picture.is_balanced() or (fives and not bal.picture.of_size(4))
    assert semistability(bal.picture)[0] == semistability(pic)[0]


@given(integral_curves())
def test_local_verdict_holds(data):
    C, p = data
    assume(C.invariants.Delta_nonzero and C.invariants.P_nonzero)
    d = local_odd(C, p)
    assume(d.supported)
    assert d.lam * d.w == d.E
    if d.table_E_asserted:
        assert d.table_E == d.E


def test_swap_st_keeps_type():
    C = C2D4Curve.from_roots(1, [(0, 49), (1, 2), (3, 4)])
    a = local_odd(C, 7)
    b = local_odd(C.swap_st(), 7)
    assert (a.type, a.lam, a.w, a.E) == (b.type, b.lam, b.w, b.E)


def test_depth_is_fraction():
    pic = cluster_picture(C2D4Curve.from_roots(1, [(0, 49), (1, 2), (3, 4)]), 7)
    assert pic.twins[0].depth == Fraction(2)
