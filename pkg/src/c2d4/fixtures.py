"""Committed regression curves with expected-value sidecars.

Layout: ``<root>/<kind>/<name>/curve`` (a curve-spec document) next to
``expected.json``.  ``kind`` is ``real`` or ``oddp``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .arith import Place
from .localdata import local_odd, local_real
from .model import C2D4Curve, parse_curve

REAL_KEYS = ("n_J", "n_hat", "kernel", "mu", "mu_hat", "lambda", "w", "E")
ODD_KEYS = ("type", "c_J", "mu", "c_hat", "mu_hat", "lambda", "w")


@dataclass
class Fixture:
    kind: str
    name: str
    curve: C2D4Curve
    expected: dict


@dataclass
class FixtureResult:
    fixture: Fixture
    mismatches: list[str] = field(default_factory=list)
    E_asserted: bool = False

    @property
    def ok(self) -> bool:
        return not self.mismatches


def default_root() -> Path:
    here = Path.cwd() / "fixtures"
    if here.is_dir():
        return here
    return Path(__file__).resolve().parents[2] / "fixtures"


def load(root: Path | None = None, kind: str | None = None) -> list[Fixture]:
    root = Path(root) if root else default_root()
    out = []
    for exp in sorted(root.glob("*/*/expected.json")):
        k = exp.parent.parent.name
        if kind and k != kind:
            continue
        curve = parse_curve((exp.parent / "curve").read_text())
        out.append(Fixture(k, exp.parent.name, curve, json.loads(exp.read_text())))
    return out


def check(fx: Fixture) -> FixtureResult:
    res = FixtureResult(fx)
    exp = fx.expected
    if fx.kind == "real":
        d = local_real(fx.curve)
        got = {"n_J": d.n_J, "n_hat": d.n_hat, "kernel": d.kernel, "mu": d.mu, "mu_hat": d.mu_hat,
               "lambda": d.lam, "w": d.w, "E": d.E}
        res.mismatches = [f"{k}: expected {exp[k]}, got {got[k]}" for k in REAL_KEYS if got[k] != exp[k]]
        res.E_asserted = True
        return res
    d = local_odd(fx.curve, exp["p"])
    if not d.supported:
        res.mismatches.append("unsupported: " + d.reason)
        return res
    got = {"type": d.type, "c_J": d.c_J, "mu": d.mu, "c_hat": d.c_hat, "mu_hat": d.mu_hat,
           "lambda": d.lam, "w": d.w}
    res.mismatches = [f"{k}: expected {exp[k]}, got {got[k]}" for k in ODD_KEYS if got[k] != exp[k]]
    if d.lam * d.w != d.E:
        res.mismatches.append(f"lambda*w = {d.lam * d.w} but E = {d.E}")
    if exp.get("table_E_asserted"):
        res.E_asserted = True
        if d.E != exp["E"]:
            res.mismatches.append(f"E: table gives {exp['E']}, Hilbert symbols give {d.E}")
    return res


def run(root: Path | None = None) -> list[FixtureResult]:
    return [check(fx) for fx in load(root)]


def place_of(fx: Fixture) -> Place:
    return Place.real() if fx.kind == "real" else Place(fx.expected["p"])
