"""Tunable precision and search bounds."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

PRECISION_ENV = "C2D4_PRECISION_CAP"


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision for p-adic root computations.

    ``start`` is the initial relative precision (in p-adic digits) at odd p,
    ``start_2adic`` the number of bits used at p = 2.  Precision doubles on
    demand until ``cap`` is exceeded.
    """

    start: int = 32
    start_2adic: int = 64
    cap: int = 4096
    max_residue_degree: int = 16
    real_digits: int = 60

    def with_start(self, start: int) -> "PrecisionConfig":
        return replace(self, start=start, start_2adic=max(start, self.start_2adic))


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for model-change searches."""

    rebalance_steps: int = 6
    mt_sweep: int = 16
    scale_range: int = 4


@dataclass(frozen=True)
class Config:
    precision: PrecisionConfig = PrecisionConfig()
    search: SearchConfig = SearchConfig()
    seed: int = 0


def default_config() -> Config:
    cfg = Config()
    cap = os.environ.get(PRECISION_ENV)
    if cap:
        cfg = replace(cfg, precision=replace(cfg.precision, cap=int(cap)))
    return cfg
