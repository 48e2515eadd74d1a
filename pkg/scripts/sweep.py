"""Sweep random curves through the global report and tally local verdicts.

    python3 scripts/sweep.py --curves 200 --seed 3 --json sweep.json

Prints, per reduction type, how often the type occurred, how often the place
was supported, and whether w = lambda * E held.  Any False verdict is listed
with its curve so it can be replayed with ``c2d4 report``.
"""

from __future__ import annotations

import argparse
import json
import random
import time
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass

from c2d4.acceptance import random_generic_curve
from c2d4.globalreport import check_conjecture


@dataclass(frozen=True)
class SweepConfig:
    curves: int = 100
    seed: int = 0
    conjugate_share: float = 0.5


def sweep(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    types: Counter = Counter()
    verdicts: dict[str, Counter] = defaultdict(Counter)
    unsupported: Counter = Counter()
    bad, E_fail, complete = [], 0, 0
    t0 = time.time()
    for _ in range(cfg.curves):
        C = random_generic_curve(rng, rng.random() < cfg.conjugate_share)
        rep = check_conjecture(C)
        complete += rep.status == "complete"
        E_fail += rep.E_product != 1
        for key, d in rep.local.items():
            if not d.supported:
                unsupported[d.reason.split(":")[0]] += 1
                continue
            label = "real" if key == "real" else (d.type or "?")
            types[label] += 1
            verdicts[label][str(d.verdict)] += 1
            if d.verdict is False:
                bad.append({"place": key, "curve": C.to_spec()})
    return {
        "config": asdict(cfg),
        "seconds": round(time.time() - t0, 1),
        "complete_reports": complete,
        "E_product_failures": E_fail,
        "types": dict(types.most_common()),
        "verdicts": {k: dict(v) for k, v in verdicts.items()},
        "unsupported": dict(unsupported.most_common()),
        "false_verdicts": bad,
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curves", type=int, default=SweepConfig.curves)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--json", help="also write the summary here")
    args = ap.parse_args(argv)
    out = sweep(SweepConfig(args.curves, args.seed))
    print(f"{args.curves} curves in {out['seconds']} s; {out['complete_reports']} complete reports; "
          f"{out['E_product_failures']} product-formula failures")
    for label, n in out["types"].items():
        v = out["verdicts"][label]
        print(f"  {label:<24} {n:>5}  true={v.get('True', 0)} false={v.get('False', 0)}")
    print("unsupported:")
    for reason, n in out["unsupported"].items():
        print(f"  {n:>5}  {reason}")
    for b in out["false_verdicts"]:
        print("FALSE VERDICT at", b["place"])
        print(b["curve"])
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(out, fh, indent=2, sort_keys=True)
    return 1 if out["false_verdicts"] or out["E_product_failures"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
