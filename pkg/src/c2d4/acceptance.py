"""The ten acceptance checks, runnable from the CLI and from the test suite.

Each check returns an :class:`Outcome`; nothing here asserts, so a failing
check is reported rather than hidden.
"""

from __future__ import annotations

import json
import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import fixtures as fx
from .arith import Place, QuadExt, hilbert_product_check, hilbert_symbol, is_rational_square, relevant_primes
from .errors import Unsupported
from .globalreport import bad_places
from .isotropy import (
    SymplecticSpaceF2, apply, invariant_lagrangian, random_two_subgroup, rank_f2, standard_gram,
    transvection,
)
from .localdata import local_2adic, local_data
from .model import (
    C2D4Curve, CurveError, DegenerateInvariants, M_t, Quadratic, center, error_term_E,
    mobius_transform, root_invariants, symbol_arguments,
)
from .richelot import RichelotDegenerate, disc_identities

SQUAREFREE = (-7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13)

FAMILY_F_ROOTS = ((-5, 5), (-4, -12), (2, -6))
FAMILY_F_EXPECTED = {
    "Delta": 84, "l1": -12, "l2l3": 64, "delta1": 25, "d2d3": 4096, "d2_plus_d3": 128, "eta1": 8,
    "eta2eta3": -1100, "xi": 10196, "dh1": Fraction(-1, 7), "d2e2_plus_d3e3": 6400,
    # evaluated from the explicit roots; see tests/oracles.py
    "dh2e3_plus_dh3e2": -462000,
}


@dataclass(frozen=True)
class AcceptanceConfig:
    seed: int = 20261016
    family_f_repeats: int = 25
    product_curves: int = 100
    identity_curves: int = 200
    hs_triples: int = 1000
    hilbert_pairs: int = 1000
    mobius_pairs: int = 100
    random_subgroups: int = 50
    omitted_curves: int = 20
    omitted_primes: int = 5


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool
    seconds: float
    budget: float | None = None
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and (self.budget is None or self.seconds <= self.budget)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        budget = f", budget {self.budget:g} s" if self.budget is not None else ""
        head = f"criterion {self.number:>2}  {tag}  {self.title} ({self.seconds:.3f} s{budget})"
        return "\n".join([head] + [f"              {d}" for d in self.details])


# ---------------------------------------------------------------------------
# random inputs


def _frac(rng: random.Random, h: int = 30, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-h, h), rng.randint(1, den))


def random_curve(rng: random.Random, conjugate: bool | None = None) -> C2D4Curve:
    """A curve of small height: six distinct rational roots, or s and t Galois conjugate."""
    if conjugate is None:
        conjugate = rng.random() < 0.5
    while True:
        try:
            if not conjugate:
                roots = [_frac(rng) for _ in range(6)]
                if len(set(roots)) < 6:
                    continue
                c = _frac(rng, 12) or Fraction(1)
                return C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])))
            m = rng.choice(SQUAREFREE)
            r = Quadratic(QuadExt(rng.randint(-12, 12), 0, m), QuadExt(rng.randint(-12, 12), 0, m))
            s = Quadratic(
                QuadExt(rng.randint(-12, 12), rng.choice([-3, -2, -1, 1, 2, 3]), m),
                QuadExt(rng.randint(-12, 12), rng.randint(-12, 12), m),
            )
            return C2D4Curve(Fraction(rng.choice([-3, -2, -1, 1, 2, 3])), m, r, s, s.conj())
        except CurveError:
            continue


def random_generic_curve(rng: random.Random, conjugate: bool | None = None) -> C2D4Curve:
    while True:
        C = random_curve(rng, conjugate)
        if C.invariants.Delta_nonzero and C.invariants.P_nonzero:
            return C


def random_centered_roots(rng: random.Random):
    """(c, m, roots) with the six roots of a centered curve lying in Q(sqrt m)."""
    while True:
        m = rng.choice((1, 1) + SQUAREFREE)
        q = lambda a, b=0: QuadExt(a, b, m)
        x = _frac(rng)
        if not x:
            continue
        if m == 1:
            roots = [q(x), q(-x)] + [q(_frac(rng)) for _ in range(4)]
        else:
            a2 = q(_frac(rng), _frac(rng) or 1)
            b2 = q(_frac(rng), _frac(rng) or 1)
            roots = [q(x), q(-x), a2, b2, a2.conj(), b2.conj()]
        if len(set(roots)) < 6:
            continue
        c = _frac(rng, 12) or Fraction(1)
        try:
            C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])), m)
        except CurveError:
            continue
        return c, m, roots


def root_identities(c: QuadExt, roots) -> dict[str, tuple]:
    """Both sides of the seven root identities for a centered model, as usually quoted."""
    a1, b1, a2, b2, a3, b3 = roots
    D = c * (-a1 * a1 * (a2 + b2 - a3 - b3) + a2 * b2 * (a3 + b3) - a3 * b3 * (a2 + b2))
    l1 = a2 + b2 - a3 - b3
    d1, d2, d3 = a1 * a1, (a2 - b2) * (a2 - b2), (a3 - b3) * (a3 - b3)
    e1 = (a2 - a3) * (b2 - b3) + (b2 - a3) * (a2 - b3)
    e2 = (a2 - a1) * (a2 + a1) + (b2 - a1) * (b2 + a1)
    e3 = (a3 - a1) * (a3 + a1) + (b3 - a1) * (b3 + a1)
    xp = 2 * (a2 + a1) * (b2 + a1) * (a3 + a1) * (b3 + a1)
    xm = 2 * (a2 - a1) * (b2 - a1) * (a3 - a1) * (b3 - a1)
    h1D2 = (a2 - b3) * (a2 - a3) * (b2 - a3) * (b2 - b3)
    h2 = 4 * (a3 + a1) * (a3 - a1) * (b3 + a1) * (b3 - a1)
    h3 = 4 * (a2 + a1) * (a2 - a1) * (b2 + a1) * (b2 - a1)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    z = (a2 - b2 - a3 + b3) * (a2 - b2 + a3 - b3) / (2 * l1)
    w = (xp - xm) / a1
    u = (d2 * e2 - d3 * e3) / l1
    v = (h2 * e3 - h3 * e2) / l1
    return {
        "root(1)": ((half * (d2 + d3)) ** 2, d2 * d3 + l1 * l1 * z * z),
        "root(2)": (quarter * e1 * e1, h1D2 + d2 * d3),
        "root(3)": ((xp + xm) ** 2, h2 * h3 + d1 * w * w),
        "root(4a)": (e2 * e2, h3 + d2 * (a2 + b2) ** 2),
        "root(4b)": (e3 * e3, h2 + d3 * (a3 + b3) ** 2),
        "root(5)": ((d2 * e2 + d3 * e3) ** 2, 4 * e2 * e3 * d2 * d3 + l1 * l1 * u * u),
        "root(6)": ((h2 * e3 + h3 * e2) ** 2, 4 * e2 * e3 * h2 * h3 + l1 * l1 * v * v),
        "root(7)": (D * l1 / c, h1D2 + l1 * l1 * d1 - (a2 * b2 - a3 * b3) ** 2),
    }


def root_identities_amended(c: QuadExt, roots) -> dict[str, tuple]:
    """The two root identities that need amending, in the form that holds."""
    a1, b1, a2, b2, a3, b3 = roots
    base = root_identities(c, roots)
    d2, d3 = (a2 - b2) * (a2 - b2), (a3 - b3) * (a3 - b3)
    h1D2 = (a2 - b3) * (a2 - a3) * (b2 - a3) * (b2 - b3)
    lhs7, rhs7 = base["root(7)"]
    return {
        "root(2)": (base["root(2)"][0], h1D2 + Fraction(1, 4) * d2 * d3),
        "root(7)": (-lhs7, rhs7),
    }


# ---------------------------------------------------------------------------
# the checks


def _timed(number, title, budget, fn, *args) -> Outcome:
    t0 = time.perf_counter()
    try:
        ok, details = fn(*args)
    except Exception as e:  # reported, not raised: the matrix must complete
        ok, details = False, [f"raised {type(e).__name__}: {e}"]
    out = Outcome(number, title, ok, time.perf_counter() - t0, budget, details)
    return out


def _family_f() -> C2D4Curve:
    return C2D4Curve.from_roots(-1, [list(p) for p in FAMILY_F_ROOTS])


def _family_f_values(C: C2D4Curve) -> dict:
    inv, ri = C.invariants, root_invariants(C)
    vals = {k: getattr(inv, k) for k in FAMILY_F_EXPECTED if hasattr(inv, k)}
    vals["Delta"] = ri.Delta.rational()
    vals["l1"] = ri.l1.rational()
    return vals


def check_1(cfg: AcceptanceConfig):
    vals = _family_f_values(_family_f())
    bad = [f"{k}: got {vals.get(k)}, want {v}" for k, v in FAMILY_F_EXPECTED.items() if vals.get(k) != v]
    times = []
    for _ in range(cfg.family_f_repeats):
        C = _family_f()
        t0 = time.perf_counter()
        C.invariants
        root_invariants(C)
        times.append(time.perf_counter() - t0)
    med = statistics.median(times)
    details = bad + [f"median invariant evaluation {med * 1e3:.3f} ms (budget 1 ms)"]
    return not bad and med < 1e-3, details


def check_2(cfg: AcceptanceConfig):
    d = local_2adic(_family_f())
    got = (d.E, d.lam, d.w, d.verdict)
    return got == (1, 1, 1, True), [f"E, lambda, w, verdict = {got} ({d.type})"]


def check_3(cfg: AcceptanceConfig, root: Path):
    res = [fx.check(f) for f in fx.load(root, "real")]
    bad = [f"{r.fixture.name}: {'; '.join(r.mismatches)}" for r in res if not r.ok]
    details = [f"{len(res) - len(bad)}/{len(res)} rows reproduced"] + bad
    return len(res) == 9 and not bad, details


def check_4(cfg: AcceptanceConfig, root: Path):
    res = [fx.check(f) for f in fx.load(root, "oddp")]
    bad = [f"{r.fixture.name}: {'; '.join(r.mismatches)}" for r in res if not r.ok]
    asserted = sum(r.E_asserted for r in res)
    details = [f"{len(res) - len(bad)}/{len(res)} fixtures match; table E compared on {asserted}"]
    cov = root / "coverage.json"
    if cov.exists():
        missing = json.loads(cov.read_text()).get("not_realized", [])
        if missing:
            details.append(f"{len(missing)} (case, r, p) targets not realized by the generator")
    return bool(res) and not bad, details + bad[:20]


def check_5(cfg: AcceptanceConfig):
    rng = random.Random(cfg.seed + 5)
    bad, kinds = [], {True: 0, False: 0}
    for i in range(cfg.product_curves):
        conj = i % 2 == 1
        C = random_generic_curve(rng, conj)
        kinds[conj] += 1
        args = symbol_arguments(C.invariants)
        primes = relevant_primes(*(x for _, a, b in args for x in (a, b)))
        prod = error_term_E(C, Place.real())
        for p in primes:
            prod *= error_term_E(C, Place(p))
        if prod != 1:
            bad.append(C.to_spec().replace("\n", "; "))
    details = [f"{kinds[False]} rational and {kinds[True]} conjugate-pair curves, {len(bad)} failures"]
    return not bad, details + bad[:5]


def check_6(cfg: AcceptanceConfig):
    rng = random.Random(cfg.seed + 6)
    failures: dict[str, int] = {}
    amended: dict[str, int] = {}
    tested = 0
    while tested < cfg.identity_curves:
        C = random_curve(rng)
        ri = root_invariants(C)
        if any(x.is_zero() for x in (ri.l1, ri.l2, ri.l3, ri.Delta)):
            continue
        try:
            ids = disc_identities(C)
        except (RichelotDegenerate, CurveError):
            continue
        tested += 1
        for k, (lhs, rhs) in ids.items():
            if lhs != rhs:
                failures[f"dual({k})"] = failures.get(f"dual({k})", 0) + 1
        lhs, rhs = ids["7"]
        if lhs != -rhs:
            amended["dual(7)"] = amended.get("dual(7)", 0) + 1
    for _ in range(cfg.identity_curves):
        c, m, roots = random_centered_roots(rng)
        if (roots[2] + roots[3] - roots[4] - roots[5]).is_zero():
            continue
        cq = QuadExt(c, 0, m)
        for k, (lhs, rhs) in root_identities(cq, roots).items():
            if lhs != rhs:
                failures[k] = failures.get(k, 0) + 1
        for k, (lhs, rhs) in root_identities_amended(cq, roots).items():
            if lhs != rhs:
                amended[k] = amended.get(k, 0) + 1
    places = {"real": [Place.real()], "2": [Place(2)], "odd": [Place(p) for p in (3, 5, 7, 11, 13)]}
    for cls, plist in places.items():
        for _ in range(cfg.hs_triples):
            A, B = _frac(rng, 400, 50) or Fraction(1), _frac(rng, 400, 50) or Fraction(1)
            if A + B == 0:
                continue
            v = rng.choice(plist)
            if hilbert_symbol(A + B, -A * B, v) != hilbert_symbol(A, B, v):
                failures[f"sum rule at {cls}"] = failures.get(f"sum rule at {cls}", 0) + 1
    details = [f"{k} fails on {n} inputs" for k, n in sorted(failures.items())]
    if failures:
        details.append(
            "amended forms (dual(7) with -2 Delta/c^2, root(2) with delta2 delta3/4, root(7) with -Delta): "
            + (f"{sum(amended.values())} failures" if amended else "hold on every input")
        )
    return not failures, details or ["all identities hold"]


def check_7(cfg: AcceptanceConfig):
    rng = random.Random(cfg.seed + 7)
    places = [Place.real()] + [Place(p) for p in (2, 3, 5, 7, 11, 13)]
    bad = 0
    for _ in range(cfg.hilbert_pairs):
        a, b, c = (_frac(rng, 10**4, 100) or Fraction(1) for _ in range(3))
        v = rng.choice(places)
        ok = hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        ok &= hilbert_symbol(a * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v)
        ok &= hilbert_symbol(a, -a, v) == 1
        ok &= hilbert_product_check(a, b) == 1
        bad += not ok
    return not bad, [f"{bad} of {cfg.hilbert_pairs} pairs violate an axiom"]


def _delta_over_c(C: C2D4Curve) -> QuadExt:
    return root_invariants(C).Delta / QuadExt(C.c, 0, C.m)


def check_8(cfg: AcceptanceConfig):
    rng = random.Random(cfg.seed + 8)
    counts = {"d1hat": 0, "M_t": 0, "1/z": 0, "scale": 0}
    bad: list[str] = []
    done = 0
    while done < cfg.mobius_pairs:
        C = center(random_curve(rng))
        if _delta_over_c(C).is_zero() or C.invariants.dh1 is None:
            continue
        d1 = -C.r.c
        kind = ("d1hat", "M_t", "1/z", "scale")[done % 4]
        try:
            if kind == "d1hat":
                M = ((rng.randint(-6, 6), rng.randint(-6, 6)), (rng.randint(-6, 6), rng.randint(-6, 6)))
                Cm = mobius_transform(C, M)
                h, hm = C.invariants.dh1, Cm.invariants.dh1
                if hm is None or h == 0:
                    continue
                ok = is_rational_square(hm / h)
            elif kind == "M_t":
                t = _frac(rng, 6, 3) or Fraction(1)
                denom = (1 - C.s.b * t + C.s.c * t * t) * (1 - C.t.b * t + C.t.c * t * t)
                if denom.is_zero() or (1 - d1 * t * t).is_zero():
                    continue
                Ct = mobius_transform(C, M_t(C, t))
                ok = _delta_over_c(Ct) == (1 - d1 * t * t) ** 2 / denom * _delta_over_c(C)
            elif kind == "1/z":
                Ci = mobius_transform(C, ((0, 1), (1, 0)))
                ok = _delta_over_c(Ci) == _delta_over_c(C) / (d1 * C.s.c * C.t.c)
            else:
                lam = _frac(rng, 6, 3) or Fraction(2)
                Cs = mobius_transform(C, ((lam, 0), (0, 1)))
                ok = _delta_over_c(Cs) == lam ** 3 * _delta_over_c(C)
        except CurveError:
            continue
        done += 1
        counts[kind] += 1
        if not ok:
            bad.append(kind)
    details = [", ".join(f"{k}: {n}" for k, n in counts.items())]
    if bad:
        details.append("failures: " + ", ".join(sorted(set(bad))))
    return not bad, details


def _verify_lagrangian(space: SymplecticSpaceF2) -> bool:
    basis = invariant_lagrangian(space)
    if rank_f2(basis) != space.n or any(space.pair(a, b) for a in basis for b in basis):
        return False
    W = {0}
    for b in basis:
        W |= {x ^ b for x in W}
    return all(apply(g, v) in W for g in space.group() for v in W)


def check_9(cfg: AcceptanceConfig):
    G = standard_gram(1)
    sp2 = [[]] + [[transvection(G, a)] for a in (1, 2, 3)]
    bad = sum(not _verify_lagrangian(SymplecticSpaceF2(1, G, tuple(g))) for g in sp2)
    rng = random.Random(cfg.seed + 9)
    for n in (2, 3):
        for _ in range(cfg.random_subgroups):
            bad += not _verify_lagrangian(random_two_subgroup(n, rng))
    total = len(sp2) + 2 * cfg.random_subgroups
    return not bad, [f"{total - bad}/{total} groups verified by enumeration"]


def check_10(cfg: AcceptanceConfig):
    from sympy import nextprime

    rng = random.Random(cfg.seed + 10)
    bad, checked = [], 0
    for _ in range(cfg.omitted_curves):
        C = random_generic_curve(rng)
        badp = {v.p for v in bad_places(C)}
        p = max(badp | {3})
        for _ in range(cfg.omitted_primes):
            p = nextprime(p)
            while p in badp:
                p = nextprime(p)
            try:
                d = local_data(C, Place(p))
                got = (d.lam, d.w, d.E)
            except (Unsupported, DegenerateInvariants) as e:
                got = str(e)
            checked += 1
            if got != (1, 1, 1):
                bad.append(f"p = {p}: {got}")
    return not bad, [f"{checked - len(bad)}/{checked} omitted primes trivial"] + bad[:5]


TITLES = {
    1: "family F invariants", 2: "family F verdict at 2", 3: "real-place table",
    4: "odd-p table fixtures", 5: "product formula for E", 6: "identity suite",
    7: "Hilbert symbol axioms", 8: "Mobius invariance", 9: "isotropy", 10: "omitted places",
}
BUDGETS = {2: 1.0, 3: 1.0, 4: 30.0, 5: 60.0, 9: 10.0}


def run_one(k: int, cfg: AcceptanceConfig | None = None, root: Path | None = None) -> Outcome:
    cfg = cfg or AcceptanceConfig()
    root = Path(root) if root else fx.default_root()
    fn = globals()[f"check_{k}"]
    args = (cfg, root) if k in (3, 4) else (cfg,)
    return _timed(k, TITLES[k], BUDGETS.get(k), fn, *args)


def run_all(cfg: AcceptanceConfig | None = None, root: Path | None = None) -> list[Outcome]:
    return [run_one(k, cfg, root) for k in range(1, 11)]
