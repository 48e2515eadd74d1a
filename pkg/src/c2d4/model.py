"""C2D4 curves y^2 = c r(x) s(x) t(x), their invariants, model changes and E."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .arith import (
    QuadExt,
    Place,
    as_fraction,
    hilbert_symbol,
    squarefree_decomposition,
)


class CurveError(ValueError):
    """Malformed or inadmissible curve data."""


class DegenerateInvariants(ArithmeticError):
    """Delta or the product P vanishes, so E (and the dual) are undefined."""


@dataclass(frozen=True)
class Quadratic:
    """Monic x^2 + b x + c with coefficients in Q(sqrt m)."""

    b: QuadExt
    c: QuadExt

    @property
    def disc(self) -> QuadExt:
        return self.b * self.b - 4 * self.c

    def __call__(self, x):
        return x * x + self.b * x + self.c

    def conj(self) -> "Quadratic":
        return Quadratic(self.b.conj(), self.c.conj())

    def shift(self, h) -> "Quadratic":
        """The quadratic whose roots are those of self plus h."""
        b, c = self.b, self.c
        return Quadratic(b - 2 * h, h * h - b * h + c)


def resultant(q1: Quadratic, q2: Quadratic) -> QuadExt:
    b2, c2, b3, c3 = q1.b, q1.c, q2.b, q2.c
    return (c2 - c3) * (c2 - c3) - (b2 - b3) * (b3 * c2 - b2 * c3)


@dataclass(frozen=True)
class C2D4Curve:
    c: Fraction
    m: int
    r: Quadratic
    s: Quadratic
    t: Quadratic

    def __post_init__(self):
        if self.c == 0:
            raise CurveError("leading coefficient c must be nonzero")
        for q in (self.r,):
            if not (q.b.is_rational() and q.c.is_rational()):
                raise CurveError("r must have rational coefficients")
        st_b = self.s.b + self.t.b
        st_c = self.s.c + self.t.c + self.s.b * self.t.b
        st_d = self.s.b * self.t.c + self.s.c * self.t.b
        st_e = self.s.c * self.t.c
        if not all(x.is_rational() for x in (st_b, st_c, st_d, st_e)):
            raise CurveError("s*t is not rational: s and t must be conjugate")
        for name, q in zip("rst", self.quadratics):
            if q.disc.is_zero():
                raise CurveError(f"{name} has a repeated root")
        for (n1, q1), (n2, q2) in (
            (("r", self.r), ("s", self.s)),
            (("r", self.r), ("t", self.t)),
            (("s", self.s), ("t", self.t)),
        ):
            if resultant(q1, q2).is_zero():
                raise CurveError(f"{n1} and {n2} share a root")

    @property
    def quadratics(self) -> tuple[Quadratic, Quadratic, Quadratic]:
        return (self.r, self.s, self.t)

    @classmethod
    def from_roots(cls, c, roots, m: int = 1) -> "C2D4Curve":
        """Build a curve from root pairs ((a1, b1), (a2, b2), (a3, b3))."""
        qs = []
        for a, b in roots:
            a, b = QuadExt.lift(a, m), QuadExt.lift(b, m)
            qs.append(Quadratic(-(a + b), a * b))
        return cls(as_fraction(c), m, *qs)

    @classmethod
    def from_coefficients(cls, c, m, r, s, t=None) -> "C2D4Curve":
        m = int(m)
        k = 1
        if m != 1:
            k, m = squarefree_decomposition(m)
            if m == 1:
                raise CurveError("m must not be a perfect square other than 1")

        def q(pair):
            out = []
            for e in pair:
                if isinstance(e, (tuple, list)):
                    a, b = e
                    out.append(QuadExt(as_fraction(a), as_fraction(b) * k, m))
                else:
                    out.append(QuadExt(as_fraction(e), 0, m))
            return Quadratic(*out)

        sq = q(s)
        tq = q(t) if t is not None else sq.conj()
        return cls(as_fraction(c), m, q(r), sq, tq)

    def sextic_coefficients(self) -> list[Fraction]:
        """Coefficients of c*r*s*t, highest degree first."""
        poly = [QuadExt(self.c, 0, self.m)]
        for q in self.quadratics:
            nxt = [QuadExt(0, 0, self.m)] * (len(poly) + 2)
            for i, a in enumerate(poly):
                nxt[i] = nxt[i] + a
                nxt[i + 1] = nxt[i + 1] + a * q.b
                nxt[i + 2] = nxt[i + 2] + a * q.c
            poly = nxt
        return [x.rational() for x in poly]

    def swap_st(self) -> "C2D4Curve":
        return C2D4Curve(self.c, self.m, self.r, self.t, self.s)

    def with_c(self, c) -> "C2D4Curve":
        return C2D4Curve(as_fraction(c), self.m, self.r, self.s, self.t)

    @cached_property
    def invariants(self) -> "InvariantSet":
        return invariants(self)

    def to_spec(self) -> str:
        return format_curve(self)


# ---------------------------------------------------------------------------
# curve-spec documents

_TOKEN = re.compile(r"\s*(\[|\]|,|[-+]?\d+(?:/\d+)?)")


def _parse_value(text: str):
    pos = 0
    text = text.strip()

    def parse():
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if not m:
            raise CurveError(f"cannot parse value near {text[pos:]!r}")
        tok = m.group(1)
        pos = m.end()
        if tok == "[":
            items = []
            while True:
                m2 = _TOKEN.match(text, pos)
                if m2 and m2.group(1) == "]":
                    pos = m2.end()
                    return items
                items.append(parse())
                m2 = _TOKEN.match(text, pos)
                if not m2:
                    raise CurveError("unterminated list")
                pos = m2.end()
                if m2.group(1) == "]":
                    return items
                if m2.group(1) != ",":
                    raise CurveError(f"expected ',' in list, got {m2.group(1)!r}")
        if tok in ("]", ","):
            raise CurveError(f"unexpected {tok!r}")
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError) as exc:
            raise CurveError(f"malformed rational {tok!r}") from exc

    value = parse()
    if text[pos:].strip():
        raise CurveError(f"trailing characters {text[pos:]!r}")
    return value


def parse_curve(document: str) -> C2D4Curve:
    """Parse a curve-spec document (keys c, m, r, s, t; '#' comments)."""
    entries: dict[str, object] = {}
    for lineno, raw in enumerate(document.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line and ":" not in line:
            raise CurveError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=") if "=" in line else line.partition(":")
        key = key.strip().lower()
        if key not in ("c", "m", "r", "s", "t"):
            raise CurveError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise CurveError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = _parse_value(value)
    for key in ("c", "r", "s"):
        if key not in entries:
            raise CurveError(f"missing key {key!r}")
    m = entries.get("m", Fraction(1))
    if not isinstance(m, Fraction) or m.denominator != 1 or m == 0:
        raise CurveError("m must be a nonzero integer")
    c = entries["c"]
    if not isinstance(c, Fraction):
        raise CurveError("c must be a rational")
    for key in ("r", "s", "t"):
        if key in entries:
            v = entries[key]
            if not isinstance(v, list) or len(v) != 2:
                raise CurveError(f"{key} must be a pair [b, c]")
            for e in v:
                if isinstance(e, list) and (len(e) != 2 or key == "r"):
                    raise CurveError(f"bad coefficient entry in {key}")
    if int(m) == 1 and "t" not in entries:
        raise CurveError("t is required when m = 1")
    return C2D4Curve.from_coefficients(c, int(m), entries["r"], entries["s"], entries.get("t"))


def _fmt(x: Fraction) -> str:
    return str(x)


def _fmt_q(x: QuadExt, m: int) -> str:
    if m == 1:
        return _fmt(x.a)
    return f"[{_fmt(x.a)}, {_fmt(x.b)}]"


def format_curve(C: C2D4Curve) -> str:
    lines = [
        f"c = {_fmt(C.c)}",
        f"m = {C.m}",
        f"r = [{_fmt(C.r.b.a)}, {_fmt(C.r.c.a)}]",
        f"s = [{_fmt_q(C.s.b, C.m)}, {_fmt_q(C.s.c, C.m)}]",
        f"t = [{_fmt_q(C.t.b, C.m)}, {_fmt_q(C.t.c, C.m)}]",
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# invariants


def center(C: C2D4Curve) -> C2D4Curve:
    h = C.r.b.a / 2
    if h == 0:
        return C
    qs = [q.shift(QuadExt(h, 0, C.m)) for q in C.quadratics]
    return C2D4Curve(C.c, C.m, *qs)


@dataclass(frozen=True)
class InvariantSet:
    c: Fraction
    delta1: Fraction
    xi: Fraction
    eta1: Fraction
    l1_sq: Fraction
    l2l3: Fraction
    eta2eta3: Fraction
    d2d3: Fraction
    d2_plus_d3: Fraction
    d2e2_plus_d3e3: Fraction
    dh2e3_plus_dh3e2: Fraction
    dh2dh3: Fraction
    res_st: Fraction
    Delta_sq: Fraction
    l1_Delta: Fraction
    dh1: Fraction | None = None
    l1_over_Delta: Fraction | None = None
    P_factors: dict = field(default_factory=dict)

    @property
    def Delta_sq_dh1(self) -> Fraction:
        return self.res_st

    @property
    def Delta_nonzero(self) -> bool:
        return self.Delta_sq != 0

    @property
    def P_nonzero(self) -> bool:
        return all(v != 0 for v in self.P_factors.values())

    def as_dict(self) -> dict[str, str | None]:
        names = [
            ("Delta^2", self.Delta_sq),
            ("l1^2", self.l1_sq),
            ("l2*l3", self.l2l3),
            ("l1/Delta", self.l1_over_Delta),
            ("delta1", self.delta1),
            ("delta2*delta3", self.d2d3),
            ("delta2+delta3", self.d2_plus_d3),
            ("eta1", self.eta1),
            ("eta2*eta3", self.eta2eta3),
            ("xi", self.xi),
            ("dhat1", self.dh1),
            ("dhat2*dhat3", self.dh2dh3),
            ("delta2*eta2+delta3*eta3", self.d2e2_plus_d3e3),
            ("dhat2*eta3+dhat3*eta2", self.dh2e3_plus_dh3e2),
            ("Delta^2*dhat1", self.res_st),
        ]
        return {k: (None if v is None else str(v)) for k, v in names}


@dataclass(frozen=True)
class RootInvariants:
    """Invariants that are individually irrational (values in Q(sqrt m))."""

    Delta: QuadExt
    l1: QuadExt
    l2: QuadExt
    l3: QuadExt
    delta2: QuadExt
    delta3: QuadExt
    eta2: QuadExt
    eta3: QuadExt
    dh2: QuadExt
    dh3: QuadExt


def _coefficients(Cc: C2D4Curve):
    """(c, delta1, b2, c2, b3, c3) of a centered model; plain Fractions when m = 1."""
    vals = (QuadExt(Cc.c, 0, Cc.m), -Cc.r.c, Cc.s.b, Cc.s.c, Cc.t.b, Cc.t.c)
    if Cc.m == 1:
        return tuple(v.a for v in vals)
    return vals


def _lift(x, m: int) -> QuadExt:
    return QuadExt._raw(x, Fraction(0), 1) if isinstance(x, Fraction) else x


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else x.rational()


def _root_values(Cc: C2D4Curve):
    c, d1, b2, c2, b3, c3 = _coefficients(Cc)
    l1 = b3 - b2
    Delta = c * (-(d1 * l1) - c2 * b3 + c3 * b2)
    eta2 = b2 * b2 - 2 * c2 - 2 * d1
    eta3 = b3 * b3 - 2 * c3 - 2 * d1
    dh2 = 4 * (c3 * c3 - d1 * (b3 * b3 - 2 * c3) + d1 * d1)
    dh3 = 4 * (c2 * c2 - d1 * (b2 * b2 - 2 * c2) + d1 * d1)
    delta2 = b2 * b2 - 4 * c2
    delta3 = b3 * b3 - 4 * c3
    return Delta, l1, -b3, -b2, delta2, delta3, eta2, eta3, dh2, dh3


def root_invariants(C: C2D4Curve, _centered: C2D4Curve | None = None) -> RootInvariants:
    Cc = _centered or center(C)
    return RootInvariants(*(_lift(x, C.m) for x in _root_values(Cc)))


def invariants(C: C2D4Curve) -> InvariantSet:
    Cc = center(C)
    Delta, l1, l2, l3, delta2, delta3, eta2, eta3, dh2, dh3 = _root_values(Cc)
    _, d1, b2, c2, b3, c3 = _coefficients(Cc)
    d1 = _rat(d1)
    xi = _rat(4 * ((d1 + c2) * (d1 + c3) + b2 * b3 * d1))
    eta1 = _rat(2 * c2 + 2 * c3 - b2 * b3)
    res = _rat((c2 - c3) * (c2 - c3) - (b2 - b3) * (b3 * c2 - b2 * c3))
    Delta_sq = _rat(Delta * Delta)
    l1_Delta = _rat(l1 * Delta)
    l1_sq = _rat(l1 * l1)
    l2l3 = _rat(l2 * l3)
    e2e3 = _rat(eta2 * eta3)
    d2d3 = _rat(delta2 * delta3)
    d2pd3 = _rat(delta2 + delta3)
    d2e2 = _rat(delta2 * eta2 + delta3 * eta3)
    dh2e3 = _rat(dh2 * eta3 + dh3 * eta2)
    dh2dh3 = _rat(dh2 * dh3)
    P = {
        "l1": l1_sq,
        "l2*l3": l2l3,
        "eta2*eta3": e2e3,
        "xi": xi,
        "delta2+delta3": d2pd3,
        "delta2*eta2+delta3*eta3": d2e2,
        "dhat2*eta3+dhat3*eta2": dh2e3,
    }
    return InvariantSet(
        c=C.c,
        delta1=d1,
        xi=xi,
        eta1=eta1,
        l1_sq=l1_sq,
        l2l3=l2l3,
        eta2eta3=e2e3,
        d2d3=d2d3,
        d2_plus_d3=d2pd3,
        d2e2_plus_d3e3=d2e2,
        dh2e3_plus_dh3e2=dh2e3,
        dh2dh3=dh2dh3,
        res_st=res,
        Delta_sq=Delta_sq,
        l1_Delta=l1_Delta,
        dh1=res / Delta_sq if Delta_sq else None,
        l1_over_Delta=l1_Delta / Delta_sq if Delta_sq else None,
        P_factors=P,
    )


def symbol_arguments(inv: InvariantSet) -> list[tuple[str, Fraction, Fraction]]:
    """The Hilbert-symbol argument pairs whose product is E."""
    if not inv.Delta_nonzero:
        raise DegenerateInvariants("Delta = 0")
    if not inv.P_nonzero:
        zero = [k for k, v in inv.P_factors.items() if v == 0]
        raise DegenerateInvariants(f"P = 0 (vanishing factors: {', '.join(zero)})")
    l1sq, d2d3, e2e3, dh = inv.l1_sq, inv.d2d3, inv.eta2eta3, inv.dh2dh3
    out = [
        ("d2+d3", inv.d2_plus_d3, -l1sq * d2d3),
        ("d2e2+d3e3", inv.d2e2_plus_d3e3, -l1sq * e2e3 * d2d3),
        ("dh2e3+dh3e2", inv.dh2e3_plus_dh3e2, -l1sq * e2e3 * dh),
        ("xi", inv.xi, -inv.delta1 * dh),
        ("e2e3", e2e3, -d2d3 * dh),
        ("c", inv.c, inv.delta1 * d2d3 * dh),
    ]
    if inv.eta1 != 0:
        out.append(("eta1", inv.eta1, -d2d3 * inv.res_st))
    out += [
        ("dh1", inv.dh1, -inv.l1_over_Delta),
        ("l1^2", l1sq, -inv.l2l3),
        ("2", Fraction(2), -l1sq),
        ("dh2dh3", dh, Fraction(-2)),
    ]
    return out


def error_term_E(C: C2D4Curve | InvariantSet, v: Place) -> int:
    inv = C if isinstance(C, InvariantSet) else C.invariants
    out = 1
    for _, a, b in symbol_arguments(inv):
        out *= hilbert_symbol(a, b, v)
    return out


# ---------------------------------------------------------------------------
# Mobius model changes


def mobius_transform(C: C2D4Curve, matrix) -> C2D4Curve:
    """The model C_m for m = ((a, b), (c, d)) acting by x -> (a x + b)/(c x + d)."""
    (a, b), (cc, d) = matrix
    a, b, cc, d = (as_fraction(x) for x in (a, b, cc, d))
    if a * d - b * cc == 0:
        raise CurveError("singular Mobius matrix")
    new_q = []
    lead = QuadExt(C.c, 0, C.m)
    for q in C.quadratics:
        B, Cq = q.b, q.c
        N = d * d - cc * d * B + cc * cc * Cq
        if N.is_zero():
            raise CurveError("a root is sent to infinity")
        x1 = -2 * b * d + (a * d + b * cc) * B - 2 * a * cc * Cq
        x0 = b * b - a * b * B + a * a * Cq
        new_q.append(Quadratic(x1 / N, x0 / N))
        lead = lead * N
    return C2D4Curve(lead.rational(), C.m, *new_q)


def M_t(C: C2D4Curve, t) -> tuple:
    """Matrix of M_t for the centered model of C."""
    t = as_fraction(t)
    d1 = (-center(C).r.c).rational()
    return ((1, t * d1), (t, 1))


def matmul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


# ---------------------------------------------------------------------------
# Invariants straight from the six roots, over any field


def invariants_from_roots(c, roots) -> dict:
    """Every quantity of the invariant set, computed from explicit roots.

    ``roots`` is (a1, b1, a2, b2, a3, b3) in any ring supporting + - * / with
    rational scalars (Fractions, p-adic elements, mpmath numbers).  The
    centering shift is applied internally.
    """
    a1, b1, a2, b2, a3, b3 = roots
    h = (a1 + b1) * Fraction(1, 2)
    A1 = (a1 - b1) * Fraction(1, 2)
    a2, b2, a3, b3 = a2 - h, b2 - h, a3 - h, b3 - h
    d1 = A1 * A1
    d2 = (a2 - b2) * (a2 - b2)
    d3 = (a3 - b3) * (a3 - b3)
    l1 = a2 + b2 - a3 - b3
    l2 = a3 + b3
    l3 = a2 + b2
    Delta = c * (-(d1 * l1) + a2 * b2 * l2 - a3 * b3 * l3)
    xi = 2 * (
        (a2 + A1) * (b2 + A1) * (a3 + A1) * (b3 + A1) + (a2 - A1) * (b2 - A1) * (a3 - A1) * (b3 - A1)
    )
    eta1 = (a2 - a3) * (b2 - b3) + (b2 - a3) * (a2 - b3)
    eta2 = (a2 - A1) * (a2 + A1) + (b2 - A1) * (b2 + A1)
    eta3 = (a3 - A1) * (a3 + A1) + (b3 - A1) * (b3 + A1)
    cross = (a2 - b3) * (a2 - a3) * (b2 - a3) * (b2 - b3)
    dh2 = 4 * (a3 + A1) * (a3 - A1) * (b3 + A1) * (b3 - A1)
    dh3 = 4 * (a2 + A1) * (a2 - A1) * (b2 + A1) * (b2 - A1)
    return {
        "c": c,
        "Delta": Delta,
        "l1": l1,
        "l2": l2,
        "l3": l3,
        "delta1": d1,
        "delta2": d2,
        "delta3": d3,
        "xi": xi,
        "eta1": eta1,
        "eta2": eta2,
        "eta3": eta3,
        "dh2": dh2,
        "dh3": dh3,
        "res_st": cross,
    }


def invariant_set_from_roots(c, roots, convert=lambda x: x) -> InvariantSet:
    """Assemble an InvariantSet from root formulas; ``convert`` maps ring values to Fractions."""
    q = invariants_from_roots(c, roots)
    D2 = q["Delta"] * q["Delta"]
    l1sq = q["l1"] * q["l1"]
    vals = {
        "c": q["c"],
        "delta1": q["delta1"],
        "xi": q["xi"],
        "eta1": q["eta1"],
        "l1_sq": l1sq,
        "l2l3": q["l2"] * q["l3"],
        "eta2eta3": q["eta2"] * q["eta3"],
        "d2d3": q["delta2"] * q["delta3"],
        "d2_plus_d3": q["delta2"] + q["delta3"],
        "d2e2_plus_d3e3": q["delta2"] * q["eta2"] + q["delta3"] * q["eta3"],
        "dh2e3_plus_dh3e2": q["dh2"] * q["eta3"] + q["dh3"] * q["eta2"],
        "dh2dh3": q["dh2"] * q["dh3"],
        "res_st": q["res_st"],
        "Delta_sq": D2,
        "l1_Delta": q["l1"] * q["Delta"],
    }
    vals = {k: convert(v) for k, v in vals.items()}
    D2 = vals["Delta_sq"]
    P = {
        "l1": vals["l1_sq"],
        "l2*l3": vals["l2l3"],
        "eta2*eta3": vals["eta2eta3"],
        "xi": vals["xi"],
        "delta2+delta3": vals["d2_plus_d3"],
        "delta2*eta2+delta3*eta3": vals["d2e2_plus_d3e3"],
        "dhat2*eta3+dhat3*eta2": vals["dh2e3_plus_dh3e2"],
    }
    return InvariantSet(
        **vals,
        dh1=vals["res_st"] / D2 if D2 else None,
        l1_over_Delta=vals["l1_Delta"] / D2 if D2 else None,
        P_factors=P,
    )
