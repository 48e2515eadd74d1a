"""Check prod_v E_v = 1 over many random curves and time it.

    python3 scripts/product_formula.py --curves 1000 --height 60

Only E is computed, so this is much faster than a full report and can run at
larger heights.  Exit status 1 if any product is not 1.
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from c2d4.arith import Place, relevant_primes
from c2d4.model import C2D4Curve, CurveError, error_term_E, symbol_arguments


@dataclass(frozen=True)
class ProductConfig:
    curves: int = 500
    height: int = 30
    seed: int = 0


def _curve(rng: random.Random, h: int) -> C2D4Curve | None:
    roots = [Fraction(rng.randint(-h, h), rng.randint(1, 6)) for _ in range(6)]
    if len(set(roots)) < 6:
        return None
    c = Fraction(rng.choice([-1, 1]) * rng.randint(1, h))
    try:
        C = C2D4Curve.from_roots(c, list(zip(roots[::2], roots[1::2])))
    except CurveError:
        return None
    inv = C.invariants
    return C if inv.Delta_nonzero and inv.P_nonzero else None


def run(cfg: ProductConfig) -> tuple[int, int, float]:
    rng = random.Random(cfg.seed)
    done = failures = 0
    t0 = time.time()
    while done < cfg.curves:
        C = _curve(rng, cfg.height)
        if C is None:
            continue
        done += 1
        args = symbol_arguments(C.invariants)
        prod = error_term_E(C, Place.real())
        for p in relevant_primes(*(x for _, a, b in args for x in (a, b))):
            prod *= error_term_E(C, Place(p))
        if prod != 1:
            failures += 1
            print("product", prod, "for")
            print(C.to_spec())
    return done, failures, time.time() - t0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curves", type=int, default=ProductConfig.curves)
    ap.add_argument("--height", type=int, default=ProductConfig.height)
    ap.add_argument("--seed", type=int, default=ProductConfig.seed)
    args = ap.parse_args(argv)
    done, failures, secs = run(ProductConfig(args.curves, args.height, args.seed))
    print(f"{done} curves, {failures} failures, {secs:.1f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
