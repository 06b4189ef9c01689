"""Multiplication counts of fast-forward evaluation against naive iteration.

Sweeps (p, n) over sparse forms and writes one JSON record per line.  Counts
are exact F_p multiplications, so the output is reproducible for a seed.

    python scripts/bench_fastforward.py --p 2,3,5 --n 2,4,6,8 --trials 50
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field

from triperm import fastforward as ff


@dataclass
class BenchConfig:
    primes: list[int] = field(default_factory=lambda: [2, 5])
    ns: list[int] = field(default_factory=lambda: [4, 8])
    budget: int | None = None  # defaults to n
    trials: int = 100
    seed: int = 0
    wrap: bool = False
    naive_cap: int = 4096
    cost_c: int = 2


def run(cfg: BenchConfig):
    for p in cfg.primes:
        for n in cfg.ns:
            budget = n if cfg.budget is None else cfg.budget
            form = ff.sparse_generate(p, n, budget, cfg.seed, cfg.wrap)
            rec = ff.count_report(form, cfg.trials, cfg.seed, naive_cap=cfg.naive_cap)
            bound = cfg.cost_c * n * budget * (2 + math.ceil(math.log2(p)))
            rec["factor_bound"] = bound
            rec["within_bound"] = rec["factor_mults_max"] <= bound
            yield rec


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", default="2,5")
    ap.add_argument("--n", default="4,8")
    ap.add_argument("--budget", type=int)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--wrap", action="store_true")
    ap.add_argument("--naive-cap", type=int, default=4096)
    args = ap.parse_args(argv)
    cfg = BenchConfig(
        primes=[int(x) for x in args.p.split(",")],
        ns=[int(x) for x in args.n.split(",")],
        budget=args.budget,
        trials=args.trials,
        seed=args.seed,
        wrap=args.wrap,
        naive_cap=args.naive_cap,
    )
    print(json.dumps({"config": asdict(cfg)}), file=sys.stderr)
    for rec in run(cfg):
        print(json.dumps(rec, separators=(",", ":")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
