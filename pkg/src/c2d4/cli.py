"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 unsupported or partial,
3 degenerate invariants, 4 internal consistency failure or a false verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from sympy import isprime

from . import acceptance
from . import fixtures as fx
from .acceptance import AcceptanceConfig
from .arith import Place
from .clusters import classify_type, cluster_picture, rebalance, semistability
from .config import Config, default_config
from .errors import InternalInconsistency, Unsupported
from .globalreport import COMPLETE, check_conjecture
from .isotropy import (
    ClosureBoundExceeded, NotATwoGroup, SymplecticSpaceF2, format_vector, invariant_lagrangian,
    parse_generators, parse_matrix,
)
from .localdata import local_data
from .model import CurveError, DegenerateInvariants, parse_curve, root_invariants
from .richelot import RichelotDegenerate, dual_curve

EXIT_OK, EXIT_USAGE, EXIT_PARTIAL, EXIT_DEGENERATE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _curve(path: str):
    return parse_curve(_read(path))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------


def cmd_invariants(args, cfg, out):
    C = _curve(args.file)
    inv = C.invariants
    ri = root_invariants(C)
    roots = {k: str(getattr(ri, k)) for k in ("Delta", "l1", "l2", "l3", "delta2", "delta3", "eta2", "eta3", "dh2", "dh3")}
    rational = inv.as_dict()
    rational["c"] = str(inv.c)
    if args.format == "json":
        out.write(_dump({"sqrt_m": C.m, "root_invariants": roots, "invariants": rational,
                         "P_nonzero": inv.P_nonzero, "Delta_nonzero": inv.Delta_nonzero}) + "\n")
    else:
        out.write(f"# values in Q(sqrt {C.m})\n" if C.m != 1 else "")
        for k, v in roots.items():
            out.write(f"{k} = {v}\n")
        out.write("\n")
        for k, v in rational.items():
            out.write(f"{k} = {v}\n")
    if not inv.Delta_nonzero:
        raise DegenerateInvariants("Delta = 0")
    return EXIT_OK


def cmd_dual(args, cfg, out):
    out.write(dual_curve(_curve(args.file)).curve.to_spec())
    return EXIT_OK


def cmd_clusters(args, cfg, out):
    C = _curve(args.file)
    pic = cluster_picture(C, args.p, cfg)
    out.write(pic.render() + "\n")
    ok, why = semistability(pic)
    out.write(f"semistable: {ok} ({why})\n")
    if not ok:
        return EXIT_PARTIAL
    bal = rebalance(C, args.p, cfg)
    if bal.steps:
        out.write(f"balanced after {bal.steps} step(s): {bal.picture.render()}\n")
    try:
        cl = classify_type(bal.picture)
    except Unsupported as e:
        out.write(f"type: unsupported ({e.reason})\n")
        return EXIT_PARTIAL
    out.write(f"type: {cl.type.label()}\n")
    return EXIT_OK


def cmd_local(args, cfg, out):
    C = _curve(args.file)
    d = local_data(C, Place.parse(args.place), cfg)
    if args.format == "json":
        out.write(_dump(d.as_dict()) + "\n")
    else:
        for k, v in d.as_dict().items():
            out.write(f"{k}: {v}\n")
    if d.verdict is False:
        return EXIT_INTERNAL
    return EXIT_OK if d.supported else EXIT_PARTIAL


def _report(args, cfg):
    C = _curve(args.file)
    return check_conjecture(C, cfg)


def cmd_report(args, cfg, out):
    rep = _report(args, cfg)
    out.write(rep.to_json() + "\n" if args.format == "json" else rep.to_text())
    if not rep.all_verdicts_true or rep.E_product != 1:
        return EXIT_INTERNAL
    return EXIT_OK if rep.status == COMPLETE else EXIT_PARTIAL


def cmd_check(args, cfg, out):
    rep = _report(args, cfg)
    for key, v in rep.verdicts.items():
        out.write(f"{key}: {'unsupported' if v is None else v}\n")
    out.write(f"prod E_v = {rep.E_product}\n")
    good = rep.all_verdicts_true and rep.E_product == 1
    out.write("OK\n" if good else "FAIL\n")
    return EXIT_OK if good else EXIT_INTERNAL


def cmd_lagrangian(args, cfg, out):
    try:
        gram = parse_matrix(_read(args.gram))
        gens = parse_generators(_read(args.gens)) if args.gens else []
        if len(gram) % 2:
            raise ValueError("Gram matrix must have even size")
        space = SymplecticSpaceF2(len(gram) // 2, gram, tuple(gens))
        basis = invariant_lagrangian(space)
    except (ValueError, NotATwoGroup) as e:
        raise UsageError(str(e)) from None
    except ClosureBoundExceeded as e:
        out.write(f"error: {e}\n")
        return EXIT_PARTIAL
    for v in basis:
        out.write(format_vector(v, space.dim) + "\n")
    return EXIT_OK


def cmd_fixtures(args, cfg, out):
    root = Path(args.root) if args.root else fx.default_root()
    failures = 0
    if args.verbose:
        for res in fx.run(root):
            tag = "pass" if res.ok else "FAIL"
            extra = "" if res.ok else "  " + "; ".join(res.mismatches)
            e = "E checked" if res.E_asserted else "E not asserted"
            out.write(f"{tag}  {res.fixture.kind:<5} {res.fixture.name:<36} {e}{extra}\n")
        out.write("\n")
    acfg = replace(AcceptanceConfig(), seed=cfg.seed) if args.seed_acceptance else AcceptanceConfig()
    for k in args.criteria or range(1, 11):
        if not 1 <= k <= 10:
            raise UsageError("criteria are numbered 1 to 10")
        res = acceptance.run_one(k, acfg, root)
        failures += not res.passed
        out.write(res.line() + "\n")
    out.write(f"{failures} criterion failure(s)\n")
    return EXIT_OK if not failures else EXIT_INTERNAL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps subcommand defaults from clobbering flags given before the subcommand
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="starting p-adic precision")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    parser = _Parser(prog="c2d4", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("invariants", cmd_invariants, "print the invariant set")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add("dual", cmd_dual, "print the Richelot dual curve").add_argument("file")
    p = add("clusters", cmd_clusters, "print the cluster picture at an odd prime")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p = add("local", cmd_local, "local data at one place")
    p.add_argument("file")
    p.add_argument("--place", required=True, help="'real' or a prime")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = add("report", cmd_report, "global report over all bad places")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add("check", cmd_check, "verdict summary").add_argument("file")
    p = add("lagrangian", cmd_lagrangian, "invariant Lagrangian over F_2")
    p.add_argument("--gram", required=True)
    p.add_argument("--gens")
    p = add("fixtures", cmd_fixtures, "run the acceptance criteria and print a pass/fail matrix")
    p.add_argument("--root", help="fixtures directory")
    p.add_argument("--criteria", type=int, nargs="+", help="only these criteria")
    p.add_argument("--verbose", action="store_true", help="also list every regression fixture")
    p.add_argument("--seed-acceptance", action="store_true", help="draw random inputs from --seed")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg: Config = replace(default_config(), seed=getattr(args, "seed", 0))
        precision = getattr(args, "precision", None)
        if precision is not None:
            if precision < 1:
                raise UsageError("--precision must be positive")
            cfg = replace(cfg, precision=cfg.precision.with_start(precision))
        if getattr(args, "p", None) is not None and (args.p < 3 or not isprime(args.p)):
            raise UsageError("--p must be an odd prime")
        return args.func(args, cfg, out)
    except (UsageError, CurveError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except (DegenerateInvariants, RichelotDegenerate) as e:
        err.write(f"degenerate: {e}\n")
        return EXIT_DEGENERATE
    except Unsupported as e:
        err.write(f"unsupported: {e.reason}\n")
        return EXIT_PARTIAL
    except InternalInconsistency as e:
        err.write(f"internal inconsistency: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
