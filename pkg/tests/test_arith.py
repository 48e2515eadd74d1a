from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import legendre_symbol

from c2d4.arith import (
    Place, QuadExt, SquareClass, hilbert_product_check, hilbert_symbol, is_local_square,
    legendre, rational_sqrt, square_class, squarefree_decomposition, vp,
)
from oracles import hilbert_bruteforce
from strategies import nonzero_frac

# (a, b, place, symbol) from hilbert_bruteforce
FROZEN_HILBERT = [
    (-1, -1, 2, -1), (2, 3, 3, -1), (3, 3, 3, -1), (-1, -1, 3, 1), (2, 5, 5, -1),
    (5, 5, 5, 1), (-1, 2, 2, 1), (2, 2, 2, 1), (3, 7, 7, -1), (-3, -1, 2, 1),
    (6, 10, 5, 1), (Fraction(1, 3), 7, 7, -1), (-2, -2, 2, -1), (-1, -1, None, -1),
]

ORACLE_PLACES = [None, 2, 3, 5, 7]


def place(p):
    return Place.real() if p is None else Place(p)


@pytest.mark.parametrize("a,b,p,expected", FROZEN_HILBERT)
def test_hilbert_frozen(a, b, p, expected):
    assert hilbert_symbol(a, b, place(p)) == expected


@given(nonzero_frac, nonzero_frac, st.sampled_from(ORACLE_PLACES))
@settings(max_examples=300)
def test_hilbert_matches_bruteforce(a, b, p):
    assert hilbert_symbol(a, b, place(p)) == hilbert_bruteforce(a, b, p)


wide = st.builds(Fraction, st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**4))
any_place = st.sampled_from([None, 2, 3, 5, 7, 11, 13, 10007])


@given(wide, wide, any_place)
def test_symmetry(a, b, p):
    assert hilbert_symbol(a, b, place(p)) == hilbert_symbol(b, a, place(p))


@given(wide, wide, wide, any_place)
def test_bimultiplicative(a, b, c, p):
    v = place(p)
    assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)


@given(wide, any_place)
def test_a_minus_a_and_one_minus_a(a, p):
    v = place(p)
    assert hilbert_symbol(a, -a, v) == 1
    if a != 1:
        assert hilbert_symbol(a, 1 - a, v) == 1


@given(wide, wide)
def test_product_formula(a, b):
    assert hilbert_product_check(a, b) == 1


@given(wide, wide, any_place)
def test_sum_rule(A, B, p):
    if A + B:
        v = place(p)
        assert hilbert_symbol(A + B, -A * B, v) == hilbert_symbol(A, B, v)


@given(wide, any_place)
def test_squares_are_trivial(a, p):
    assert hilbert_symbol(a * a, 7, place(p)) == 1
    assert is_local_square(a * a, place(p))


def test_hilbert_rejects_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, Place(3))


@pytest.mark.parametrize(
    "x,p,cls",
    [
        (1, 2, SquareClass.SQUARE), (17, 2, SquareClass.SQUARE), (5, 2, SquareClass.UNRAMIFIED_NONSQUARE),
        (3, 2, SquareClass.OTHER), (-1, 2, SquareClass.OTHER), (2, 2, SquareClass.UNIFORMIZER),
        (4, 3, SquareClass.SQUARE), (2, 3, SquareClass.UNRAMIFIED_NONSQUARE), (3, 3, SquareClass.UNIFORMIZER),
        (Fraction(1, 9), 3, SquareClass.SQUARE), (Fraction(2, 25), 5, SquareClass.UNRAMIFIED_NONSQUARE),
        (-3, None, SquareClass.OTHER), (Fraction(1, 7), None, SquareClass.SQUARE),
    ],
)
def test_square_class(x, p, cls):
    assert square_class(x, place(p)) is cls


@given(st.integers(-500, 500).filter(bool), st.sampled_from([3, 5, 7, 11, 13]))
def test_legendre_matches_sympy(a, p):
    expected = 0 if a % p == 0 else legendre_symbol(a % p, p)
    assert legendre(a, p) == expected


@given(st.integers(-10**5, 10**5).filter(bool))
def test_squarefree_decomposition(n):
    k, m0 = squarefree_decomposition(n)
    assert k * k * m0 == n
    assert squarefree_decomposition(m0) == (1, m0)


def test_valuations():
    assert vp(Fraction(50, 3), 5) == 2
    assert vp(Fraction(50, 3), 3) == -1
    with pytest.raises(ValueError):
        vp(0, 3)
    assert rational_sqrt(Fraction(49, 4)) == Fraction(7, 2)
    with pytest.raises(ValueError):
        rational_sqrt(2)


quad = st.builds(QuadExt, st.integers(-50, 50), st.integers(-50, 50), st.just(-7))


@given(quad, quad)
def test_quadext_field(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).conj() == x.conj() + y.conj()
    if not y.is_zero():
        assert (x / y) * y == x
        assert y * y.inverse() == QuadExt(1, 0, -7)


def test_quadext_mixing_fields():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 2) + QuadExt(1, 1, 3)
    assert (QuadExt(1, 1, 2) + 1).a == 2


@pytest.mark.parametrize("text,p", [("real", 0), ("oo", 0), ("7", 7), (" 2 ", 2)])
def test_place_parse(text, p):
    assert Place.parse(text).p == p


@pytest.mark.parametrize("bad", ["4", "1", "x"])
def test_place_parse_rejects(bad):
    with pytest.raises(ValueError):
        Place.parse(bad)
