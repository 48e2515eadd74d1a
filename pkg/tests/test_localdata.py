from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from c2d4 import DegenerateInvariants
from c2d4.arith import Place, QuadExt
from c2d4.localdata import (
    _good_ordinary_conditions, in_family_F, local_2adic, local_data, local_real, real_arrangement,
    sqrt_2adic,
)
from c2d4.model import C2D4Curve, CurveError, Quadratic, error_term_E, mobius_transform
from strategies import curves

# found by a small search over m = 5 models; frozen here as a regression witness
GOOD_ORDINARY = C2D4Curve(
    Fraction(1), 5,
    Quadratic(QuadExt(0, 0, 5), QuadExt(-4, 0, 5)),
    Quadratic(QuadExt(-1, -1, 5), QuadExt(Fraction(23, 2), Fraction(-3, 2), 5)),
    Quadratic(QuadExt(-1, 1, 5), QuadExt(Fraction(23, 2), Fraction(3, 2), 5)),
)


def _family_f_variant(c_unit, shift):
    pairs = [(-5, 5), (-4, -12), (2, -6)]
    return C2D4Curve.from_roots(-c_unit * c_unit, [(a + shift, b + shift) for a, b in pairs])


def test_family_f_at_two(family_f):
    d = local_2adic(family_f)
    assert d.type == "family F"
    assert (d.lam, d.w, d.E, d.verdict) == (1, 1, 1, True)


@given(st.integers(-40, 40), st.integers(-20, 20).map(lambda k: 2 * k + 1))
def test_family_f_congruence_class(k, u):
    C = _family_f_variant(u, 256 * k)
    assume(C.invariants.P_nonzero)
    assert in_family_F(C)
    assert error_term_E(C, Place(2)) == 1


@pytest.mark.parametrize("shift", [1, 2, 128])
def test_outside_family_f(shift):
    assert not in_family_F(_family_f_variant(1, shift))


def test_positive_c_is_not_family_f():
    C = C2D4Curve.from_roots(1, [(-5, 5), (-4, -12), (2, -6)])
    assert not in_family_F(C)


def test_good_ordinary_witness():
    assert _good_ordinary_conditions(GOOD_ORDINARY) is None
    d = local_2adic(GOOD_ORDINARY)
    assert d.type == "good ordinary"
    assert (d.lam, d.w, d.E) == (1, 1, 1)


def test_good_ordinary_survives_odd_scaling():
    moved = mobius_transform(GOOD_ORDINARY, ((1, 4), (0, 1)))
    assert local_2adic(moved).supported


def test_unsupported_at_two():
    d = local_2adic(C2D4Curve.from_roots(1, [(0, 1), (2, 3), (4, 5)]))
    assert not d.supported and d.verdict is None and d.reason


@pytest.mark.parametrize("x,bits", [(17, 32), (Fraction(1, 9), 32), (-7, 40)])
def test_sqrt_2adic(x, bits):
    y = sqrt_2adic(x, bits)
    assert y is not None
    diff = y * y - x
    assert diff == 0 or (diff.numerator % (1 << (bits - 2))) == 0


def test_sqrt_2adic_nonsquare():
    assert sqrt_2adic(3, 32) is None
    assert sqrt_2adic(2, 32) is None


def test_real_arrangement_counts():
    arr = real_arrangement(C2D4Curve.from_roots(1, [(0, 1), (2, 3), (4, 5)]))
    assert arr.n_components == 3
    assert [col for _, col in arr.real_roots] == list("rrsstt")
    neg = real_arrangement(C2D4Curve.from_roots(-1, [(0, 1), (2, 3), (4, 5)]))
    assert neg.components == (0, 0, 1, 1, 2, 2)
    assert arr.components == (0, 1, 1, 2, 2, 0)


def test_no_real_points():
    C = C2D4Curve.from_coefficients(-1, 1, [2, 2], [-2, 5], [6, 13])
    d = local_real(C)
    assert d.mu == -1 and d.n_J == 1


@given(curves())
def test_real_verdict(C):
    try:
        d = local_real(C)
    except (DegenerateInvariants, CurveError):
        assume(False)
    assert d.w == 1
    assert d.verdict
    assert d.kernel in (1, 2, 4) and d.n_J in (1, 2, 4) and d.n_hat in (1, 2, 4)


@pytest.mark.parametrize("p", [11, 13])
def test_good_reduction_prime(p):
    d = local_data(C2D4Curve.from_roots(1, [(0, 1), (2, 3), (4, 5)]), Place(p))
    assert d.type == "2(a)"
    assert (d.lam, d.w, d.E) == (1, 1, 1)
