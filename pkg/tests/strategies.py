"""Hypothesis strategies for C2D4 curves and rationals."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from c2d4.arith import QuadExt
from c2d4.model import C2D4Curve, CurveError, Quadratic

SQUAREFREE = [-7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13]

small_int = st.integers(-12, 12)
nonzero_int = small_int.filter(bool)
small_frac = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 4))
nonzero_frac = small_frac.filter(bool)


@st.composite
def rational_curves(draw, centered=False):
    roots = draw(st.lists(small_frac, min_size=6, max_size=6, unique=True))
    if centered:
        roots[1] = -roots[0]
        assume(roots[0] != 0 and len(set(roots)) == 6)
    c = draw(nonzero_frac)
    try:
        return C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])))
    except CurveError:
        assume(False)


@st.composite
def conjugate_curves(draw):
    """r rational, s defined over Q(sqrt m) and t its conjugate."""
    m = draw(st.sampled_from(SQUAREFREE))
    rb, rc = draw(small_int), draw(small_int)
    sb = QuadExt(draw(small_int), draw(nonzero_int), m)
    sc = QuadExt(draw(small_int), draw(small_int), m)
    s = Quadratic(sb, sc)
    r = Quadratic(QuadExt(rb, 0, m), QuadExt(rc, 0, m))
    try:
        return C2D4Curve(Fraction(draw(nonzero_int)), m, r, s, s.conj())
    except CurveError:
        assume(False)


def curves():
    return st.one_of(rational_curves(), conjugate_curves())


def generic(C: C2D4Curve) -> bool:
    inv = C.invariants
    return inv.Delta_nonzero and inv.P_nonzero


places = st.sampled_from([None, 2, 3, 5, 7, 11, 13])


@st.composite
def centered_roots(draw):
    """(c, m, roots) for a centered curve; conjugate pairs when m != 1."""
    m = draw(st.sampled_from([1, 1] + SQUAREFREE))
    q = lambda a, b=0: QuadExt(a, b, m)
    x = draw(nonzero_frac)
    if m == 1:
        rest = draw(st.lists(small_frac, min_size=4, max_size=4, unique=True))
        roots = [q(x), q(-x)] + [q(r) for r in rest]
    else:
        a2 = q(draw(small_frac), draw(nonzero_frac))
        b2 = q(draw(small_frac), draw(nonzero_frac))
        roots = [q(x), q(-x), a2, b2, a2.conj(), b2.conj()]
    assume(len(set(roots)) == 6)
    c = draw(nonzero_frac)
    try:
        C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])), m)
    except CurveError:
        assume(False)
    return c, m, roots
