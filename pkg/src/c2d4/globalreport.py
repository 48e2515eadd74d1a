"""Assembling local data into global products and verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from .arith import Place
from .config import Config, default_config
from .localdata import LocalData, local_data
from .model import C2D4Curve, DegenerateInvariants, resultant

COMPLETE, PARTIAL = "complete", "partial"


def _odd_primes_of(x: Fraction) -> set[int]:
    x = Fraction(x)
    out: set[int] = set()
    for n in (abs(x.numerator), x.denominator):
        if n > 1:
            out.update(p for p in factorint(n) if p != 2)
    return out


def bad_places(C: C2D4Curve) -> list[Place]:
    """The real place, 2, and the odd primes where some invariant of C is not a unit."""
    inv = C.invariants
    if not inv.Delta_nonzero or not inv.P_nonzero:
        raise DegenerateInvariants("P or Delta vanishes")
    r, s, t = C.quadratics
    values = [
        C.c,
        r.disc.rational(),
        (s.disc * t.disc).rational(),
        (resultant(r, s) * resultant(r, t)).rational(),
        resultant(s, t).rational(),
    ]
    values += [v for v in vars(inv).values() if isinstance(v, Fraction)]
    values += [Fraction(v) for v in inv.P_factors.values()]
    for q in C.quadratics:
        for coef in (q.b, q.c):
            values += [Fraction(1, coef.a.denominator), Fraction(1, coef.b.denominator)]
    primes: set[int] = set()
    for v in values:
        if v:
            primes |= _odd_primes_of(v)
    return [Place.real(), Place(2)] + [Place(p) for p in sorted(primes)]


@dataclass
class GlobalReport:
    curve: str
    places: list[Place]
    local: dict[str, LocalData]
    status: str
    parity: int | None
    root_number: int | None
    E_product: int
    lambda_partial: int
    gaps: list[str] = field(default_factory=list)

    @property
    def verdicts(self) -> dict[str, bool | None]:
        return {k: v.verdict for k, v in self.local.items()}

    @property
    def all_verdicts_true(self) -> bool:
        return all(v is not False for v in self.verdicts.values())

    def as_dict(self) -> dict:
        return {
            "curve": self.curve,
            "places": [str(p) for p in self.places],
            "status": self.status,
            "parity_prediction": self.parity,
            "global_root_number": self.root_number,
            "E_product": self.E_product,
            "lambda_product_supported": self.lambda_partial,
            "gaps": self.gaps,
            "local": {k: v.as_dict() for k, v in self.local.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [self.curve.rstrip(), ""]
        lines.append(f"{'place':>6}  {'lambda':>6}  {'w':>3}  {'E':>3}  verdict  type")
        for key, d in self.local.items():
            if d.supported:
                lines.append(
                    f"{key:>6}  {d.lam:>6}  {d.w:>3}  {d.E:>3}  {str(d.verdict):>7}  {d.type or ''}"
                )
            else:
                lines.append(f"{key:>6}  {'?':>6}  {'?':>3}  {d.E:>3}  {'-':>7}  unsupported: {d.reason}")
        lines.append("")
        lines.append(f"prod E_v = {self.E_product}")
        if self.status == COMPLETE:
            lines.append(f"parity prediction prod lambda_v = {self.parity}")
            lines.append(f"global root number prod w_v = {self.root_number}")
        else:
            lines.append(f"partial: lambda product over supported places = {self.lambda_partial}")
            lines.append("gaps: " + ", ".join(self.gaps))
        return "\n".join(lines) + "\n"


def check_conjecture(C: C2D4Curve, cfg: Config | None = None, places: list[Place] | None = None) -> GlobalReport:
    cfg = cfg or default_config()
    places = places if places is not None else bad_places(C)
    local = {str(v): local_data(C, v, cfg) for v in places}
    E_prod = lam = w = 1
    gaps = []
    for key, d in local.items():
        E_prod *= d.E
        if d.supported:
            lam *= d.lam
            w *= d.w
        else:
            gaps.append(f"{key}: {d.reason}")
    complete = not gaps
    return GlobalReport(
        C.to_spec(), places, local, COMPLETE if complete else PARTIAL,
        lam if complete else None, w if complete else None, E_prod, lam, gaps,
    )


def parity_prediction(C: C2D4Curve, cfg: Config | None = None) -> tuple[int | None, list[str]]:
    """The product of local lambdas, or None together with the unsupported places."""
    rep = check_conjecture(C, cfg)
    return rep.parity, rep.gaps
