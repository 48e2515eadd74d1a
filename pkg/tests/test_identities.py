"""Exact algebraic identities between the invariants, on random curves."""

from fractions import Fraction

import pytest
from hypothesis import assume, given

from c2d4.arith import QuadExt, is_rational_square
from c2d4.model import C2D4Curve, CurveError, M_t, center, matmul, mobius_transform, root_invariants
from c2d4.richelot import RichelotDegenerate, disc_identities, dual_curve
from oracles import root_quantities
from strategies import centered_roots, curves, nonzero_frac, small_int


def _q(c, m, roots):
    q = root_quantities(QuadExt(c, 0, m), roots)
    assume(not q["l1"].is_zero())
    return q


@given(centered_roots())
def test_half_sum_of_discriminants(data):
    c, m, roots = data
    q = _q(*data)
    a1, b1, a2, b2, a3, b3 = roots
    z = (a2 - b2 - a3 + b3) * (a2 - b2 + a3 - b3) / (2 * q["l1"])
    assert z.is_rational()
    lhs = (Fraction(1, 2) * (q["d2"] + q["d3"])) ** 2
    assert lhs == q["d2"] * q["d3"] + q["l1"] * q["l1"] * z * z


@given(centered_roots())
def test_eta1_square(data):
    # the delta2*delta3 term carries a factor 1/4 (expand eta1 = X + Y with XY = Delta^2 dhat1)
    q = _q(*data)
    assert Fraction(1, 4) * q["e1"] * q["e1"] == q["D2h1"] + Fraction(1, 4) * q["d2"] * q["d3"]


@given(centered_roots())
def test_xi_square(data):
    c, m, roots = data
    q = _q(*data)
    w = (q["xi_p"] - q["xi_m"]) / roots[0]
    assert w.is_rational()
    assert q["xi"] * q["xi"] == q["h2"] * q["h3"] + q["d1"] * w * w


@given(centered_roots())
def test_eta2_eta3_squares(data):
    c, m, (a1, b1, a2, b2, a3, b3) = data
    q = _q(*data)
    assert q["e2"] * q["e2"] == q["h3"] + q["d2"] * (a2 + b2) ** 2
    assert q["e3"] * q["e3"] == q["h2"] + q["d3"] * (a3 + b3) ** 2


@given(centered_roots())
def test_weighted_sums(data):
    q = _q(*data)
    d2, d3, e2, e3, h2, h3, l1 = (q[k] for k in ("d2", "d3", "e2", "e3", "h2", "h3", "l1"))
    x = (d2 * e2 - d3 * e3) / l1
    y = (h2 * e3 - h3 * e2) / l1
    assert x.is_rational() and y.is_rational()
    assert (d2 * e2 + d3 * e3) ** 2 == 4 * e2 * e3 * d2 * d3 + l1 * l1 * x * x
    assert (h2 * e3 + h3 * e2) ** 2 == 4 * e2 * e3 * h2 * h3 + l1 * l1 * y * y


@given(centered_roots())
def test_delta_l1_over_c(data):
    c, m, (a1, b1, a2, b2, a3, b3) = data
    q = _q(*data)
    # holds with -Delta, the same sign convention as Delta of the dual
    lhs = -q["Delta"] * q["l1"] / QuadExt(c, 0, m)
    assert lhs == q["D2h1"] + q["l1"] * q["l1"] * q["d1"] - (a2 * b2 - a3 * b3) ** 2


@given(centered_roots())
def test_invariant_set_matches_root_formulas(data):
    c, m, roots = data
    C = C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])), m)
    q = root_quantities(QuadExt(c, 0, m), roots)
    inv = C.invariants
    assert inv.delta1 == q["d1"].rational()
    assert inv.xi == q["xi"].rational()
    assert inv.eta1 == q["e1"].rational()
    assert inv.Delta_sq == (q["Delta"] ** 2).rational()
    assert inv.res_st == q["D2h1"].rational()
    assert inv.dh2e3_plus_dh3e2 == (q["h2"] * q["e3"] + q["h3"] * q["e2"]).rational()


# ---------------------------------------------------------------------------
# discriminants of the Richelot dual


def _dual_identities(C):
    ri = root_invariants(C)
    assume(not any(x.is_zero() for x in (ri.l1, ri.l2, ri.l3, ri.Delta)))
    try:
        return disc_identities(C)
    except (RichelotDegenerate, CurveError):
        assume(False)


@pytest.mark.parametrize("k", "123456")
@given(C=curves())
def test_dual_discriminants(k, C):
    lhs, rhs = _dual_identities(C)[k]
    assert lhs == rhs


@given(curves())
def test_dual_delta_sign(C):
    """With the dual labelled from (s,t), (r,t), (r,s), Delta(dual) = -2 Delta / c^2."""
    lhs, rhs = _dual_identities(C)["7"]
    assert lhs == -rhs


def test_dual_delta_family_f(family_f):
    ri_hat = root_invariants(dual_curve(family_f).curve)
    assert (ri_hat.Delta * family_f.c ** 2).rational() == -168


def test_disc_family_f(family_f):
    lhs, rhs = disc_identities(family_f)["1"]
    assert lhs.rational() == rhs.rational() == -4032


# ---------------------------------------------------------------------------
# Mobius model changes


def _delta_over_c(C):
    return root_invariants(C).Delta / QuadExt(C.c, 0, C.m)


@given(curves(), nonzero_frac)
def test_delta_over_c_under_Mt(C, t):
    Cc = center(C)
    d1 = -Cc.r.c
    denom = (1 - Cc.s.b * t + Cc.s.c * t * t) * (1 - Cc.t.b * t + Cc.t.c * t * t)
    assume(not denom.is_zero() and not (1 - d1 * t * t).is_zero())
    try:
        Ct = mobius_transform(Cc, M_t(Cc, t))
    except CurveError:
        assume(False)
    assume(not _delta_over_c(Cc).is_zero())
    factor = (1 - d1 * t * t) ** 2 / denom
    assert _delta_over_c(Ct) == factor * _delta_over_c(Cc)


@given(curves())
def test_delta_over_c_under_inversion(C):
    Cc = center(C)
    try:
        Ci = mobius_transform(Cc, ((0, 1), (1, 0)))
    except CurveError:
        assume(False)
    d1 = -Cc.r.c
    assume(not _delta_over_c(Cc).is_zero())
    assert _delta_over_c(Ci) == _delta_over_c(Cc) / (d1 * Cc.s.c * Cc.t.c)


@given(curves(), nonzero_frac)
def test_delta_over_c_under_scaling(C, lam):
    Cs = mobius_transform(C, ((lam, 0), (0, 1)))
    assert _delta_over_c(Cs) == lam ** 3 * _delta_over_c(C)


@given(curves(), small_int, small_int, small_int, small_int)
def test_dhat1_square_class(C, a, b, c, d):
    assume(a * d - b * c != 0)
    try:
        Cm = mobius_transform(C, ((a, b), (c, d)))
    except CurveError:
        assume(False)
    h, hm = C.invariants.dh1, Cm.invariants.dh1
    assume(h is not None and hm is not None and h != 0)
    assert is_rational_square(hm / h)


@given(curves(), small_int, small_int, small_int, small_int, small_int, small_int)
def test_mobius_composition(C, a, b, c, d, e, f):
    m1, m2 = ((a, b), (c, 1)), ((d, e), (f, 1))
    assume(a - b * c != 0 and d - e * f != 0)
    try:
        lhs = mobius_transform(mobius_transform(C, m1), m2)
        rhs = mobius_transform(C, matmul(m2, m1))
    except CurveError:
        assume(False)
    assert lhs == rhs
