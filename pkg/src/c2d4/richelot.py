"""The Richelot dual curve and the discriminant identities linking C and its dual."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import QuadExt
from .model import C2D4Curve, Quadratic, center, resultant, root_invariants


class RichelotDegenerate(ArithmeticError):
    """Some l_i or Delta vanishes, so the dual is not defined by the standard formula."""


def _wronskian(P: Quadratic, Q: Quadratic) -> tuple[QuadExt, QuadExt, QuadExt]:
    """Coefficients (x^2, x, 1) of Q*P' - P*Q'."""
    return (Q.b - P.b, 2 * (Q.c - P.c), P.b * Q.c - Q.b * P.c)


@dataclass(frozen=True)
class RichelotDual:
    curve: C2D4Curve
    source: C2D4Curve

    @property
    def c(self):
        return self.curve.c


def dual_curve(C: C2D4Curve) -> RichelotDual:
    Cc = center(C)
    ri = root_invariants(Cc)
    for name, val in (("l1", ri.l1), ("l2", ri.l2), ("l3", ri.l3), ("Delta", ri.Delta)):
        if val.is_zero():
            raise RichelotDegenerate(f"{name} = 0")
    r, s, t = Cc.quadratics
    duals = []
    for (P, Q), ell in (((s, t), ri.l1), ((t, r), ri.l2), ((s, r), ri.l3)):
        a2, a1, a0 = _wronskian(P, Q)
        if a2 != ell:
            raise AssertionError("Richelot quadratic is not monic")
        duals.append(Quadratic(a1 / ell, a0 / ell))
    lead = (ri.l1 * ri.l2 * ri.l3 / ri.Delta).rational()
    return RichelotDual(C2D4Curve(lead, C.m, *duals), C)


def dual_root_differences(C: C2D4Curve) -> dict[str, QuadExt]:
    """Squared root differences of the dual and the cross-difference products.

    Keys: 'disc_r', 'disc_s', 'disc_t' for (a_i - b_i)^2 of the dual quadratics and
    'cross_st', 'cross_tr', 'cross_rs' for products over the four cross differences
    (which equal the pairwise resultants).
    """
    D = dual_curve(C).curve
    rh, sh, th = D.quadratics
    return {
        "disc_r": rh.disc,
        "disc_s": sh.disc,
        "disc_t": th.disc,
        "cross_st": resultant(sh, th),
        "cross_tr": resultant(th, rh),
        "cross_rs": resultant(rh, sh),
    }


def disc_identities(C: C2D4Curve) -> dict[str, tuple[QuadExt, QuadExt]]:
    """Both sides of the seven discriminant identities relating C and its dual."""
    Cc = center(C)
    ri = root_invariants(Cc)
    d = dual_root_differences(Cc)
    r, s, t = Cc.quadratics
    c = QuadExt(Cc.c, 0, Cc.m)
    D2 = ri.Delta * ri.Delta
    dual = dual_curve(Cc).curve
    return {
        "1": (ri.l1 * ri.l1 * d["disc_r"], 4 * resultant(s, t)),
        "2": (ri.l2 * ri.l2 * d["disc_s"], 4 * resultant(t, r)),
        "3": (ri.l3 * ri.l3 * d["disc_t"], 4 * resultant(s, r)),
        "4": (r.disc, c * c * ri.l2 * ri.l2 * ri.l3 * ri.l3 / D2 * d["cross_st"]),
        "5": (s.disc, c * c * ri.l1 * ri.l1 * ri.l3 * ri.l3 / D2 * d["cross_tr"]),
        "6": (t.disc, c * c * ri.l1 * ri.l1 * ri.l2 * ri.l2 / D2 * d["cross_rs"]),
        "7": (root_invariants(dual).Delta, 2 * ri.Delta / (c * c)),
    }
