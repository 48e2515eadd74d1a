"""Independent reference computations used to pin expected values.

Nothing here shares code with the package beyond the curve container.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath


def _strip(x: Fraction, p: int) -> int:
    """An integer in the same square class as x with p-valuation 0 or 1."""
    n = x.numerator * x.denominator
    while n % (p * p) == 0:
        n //= p * p
    return n


@lru_cache(maxsize=None)
def _square_tables(p: int, N: int):
    P = p ** N
    all_sq = {z * z % P for z in range(P)}
    unit_sq = {z * z % P for z in range(P) if z % p}
    return all_sq, unit_sq


def hilbert_bruteforce(a, b, p: int | None) -> int:
    """(a, b)_p by searching primitive zeros of z^2 - a x^2 - b y^2.

    After stripping square factors both coefficients have valuation at most 1,
    so any partial derivative at a primitive point has valuation at most
    v(2) + 1 and a zero modulo p^(2 v(2) + 3) lifts by Hensel's lemma.
    """
    a, b = Fraction(a), Fraction(b)
    if p is None:
        return -1 if a < 0 and b < 0 else 1
    N = 5 if p == 2 else 3
    P = p ** N
    A, B = _strip(a, p) % P, _strip(b, p) % P
    all_sq, unit_sq = _square_tables(p, N)
    for x in range(P):
        ax = A * x * x
        for y in range(P):
            val = (ax + B * y * y) % P
            if x % p or y % p:
                if val in all_sq:
                    return 1
            elif val in unit_sq:
                return 1
    return -1


def _quad_roots(q, m: int, dps: int):
    """Complex roots of x^2 + b x + c with b, c in Q(sqrt m)."""
    sm = mpmath.sqrt(mpmath.mpf(m))
    b = mpmath.mpf(q.b.a.numerator) / q.b.a.denominator + sm * mpmath.mpf(q.b.b.numerator) / q.b.b.denominator
    c = mpmath.mpf(q.c.a.numerator) / q.c.a.denominator + sm * mpmath.mpf(q.c.b.numerator) / q.c.b.denominator
    d = mpmath.sqrt(mpmath.mpc(b * b - 4 * c))
    return (-b + d) / 2, (-b - d) / 2


def numeric_invariants(C, dps: int = 60) -> dict:
    """The invariant set evaluated from numerical roots and the defining formulas."""
    with mpmath.workdps(dps):
        (a1, b1), (a2, b2), (a3, b3) = (_quad_roots(q, C.m, dps) for q in C.quadratics)
        h = (a1 + b1) / 2
        a1, b1, a2, b2, a3, b3 = (x - h for x in (a1, b1, a2, b2, a3, b3))
        c = mpmath.mpf(C.c.numerator) / C.c.denominator
        D = c * (-a1 ** 2 * (a2 + b2 - a3 - b3) + a2 * b2 * (a3 + b3) - a3 * b3 * (a2 + b2))
        l1, l2, l3 = a2 + b2 - a3 - b3, a3 + b3, a2 + b2
        d1, d2, d3 = a1 ** 2, (a2 - b2) ** 2, (a3 - b3) ** 2
        e1 = (a2 - a3) * (b2 - b3) + (b2 - a3) * (a2 - b3)
        e2 = (a2 - a1) * (a2 + a1) + (b2 - a1) * (b2 + a1)
        e3 = (a3 - a1) * (a3 + a1) + (b3 - a1) * (b3 + a1)
        xi = 2 * ((a2 + a1) * (b2 + a1) * (a3 + a1) * (b3 + a1) + (a2 - a1) * (b2 - a1) * (a3 - a1) * (b3 - a1))
        h1 = (a2 - b3) * (a2 - a3) * (b2 - a3) * (b2 - b3) / D ** 2
        h2 = 4 * (a3 + a1) * (a3 - a1) * (b3 + a1) * (b3 - a1)
        h3 = 4 * (a2 + a1) * (a2 - a1) * (b2 + a1) * (b2 - a1)
        return {
            "Delta_sq": D ** 2, "l1_sq": l1 ** 2, "l2l3": l2 * l3, "delta1": d1,
            "d2d3": d2 * d3, "d2_plus_d3": d2 + d3, "eta1": e1, "eta2eta3": e2 * e3, "xi": xi,
            "dh1": h1, "dh2dh3": h2 * h3, "d2e2_plus_d3e3": d2 * e2 + d3 * e3,
            "dh2e3_plus_dh3e2": h2 * e3 + h3 * e2,
        }


def close(x, y: Fraction, dps: int = 60) -> bool:
    with mpmath.workdps(dps):
        y = mpmath.mpf(y.numerator) / y.denominator
        return abs(x - y) <= mpmath.mpf(10) ** (20 - dps) * max(1, abs(y))


def root_quantities(c, roots) -> dict:
    """Defining formulas on explicit roots of a centered model (a1 = -b1), over any ring."""
    a1, b1, a2, b2, a3, b3 = roots
    assert a1 + b1 == 0 * a1
    half = Fraction(1, 2)
    D = c * (-a1 * a1 * (a2 + b2 - a3 - b3) + a2 * b2 * (a3 + b3) - a3 * b3 * (a2 + b2))
    xp = 2 * (a2 + a1) * (b2 + a1) * (a3 + a1) * (b3 + a1)
    xm = 2 * (a2 - a1) * (b2 - a1) * (a3 - a1) * (b3 - a1)
    return {
        "Delta": D, "xi": xp + xm, "xi_p": xp, "xi_m": xm,
        "l1": a2 + b2 - a3 - b3, "l2": a3 + b3, "l3": a2 + b2,
        "d1": a1 * a1, "d2": (a2 - b2) * (a2 - b2), "d3": (a3 - b3) * (a3 - b3),
        "e1": (a2 - a3) * (b2 - b3) + (b2 - a3) * (a2 - b3),
        "e2": (a2 - a1) * (a2 + a1) + (b2 - a1) * (b2 + a1),
        "e3": (a3 - a1) * (a3 + a1) + (b3 - a1) * (b3 + a1),
        "D2h1": (a2 - b3) * (a2 - a3) * (b2 - a3) * (b2 - b3),
        "h2": 4 * (a3 + a1) * (a3 - a1) * (b3 + a1) * (b3 - a1),
        "h3": 4 * (a2 + a1) * (a2 - a1) * (b2 + a1) * (b2 - a1),
        "half": half,
    }
