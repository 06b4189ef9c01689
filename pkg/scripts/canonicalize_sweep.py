"""Canonicalize random maximal-orbit maps and time each stage.

    python scripts/canonicalize_sweep.py --p 3 --n 4 --count 20
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from triperm import fastforward as ff
from triperm.trigroup import conjugate_to_delta, random_triangular, standard_form


@dataclass
class SweepConfig:
    p: int = 3
    n: int = 4
    count: int = 20
    seed: int = 0


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    for k in range(cfg.count):
        sigma = random_triangular(cfg.p, cfg.n, rng, maximal=True)
        t0 = time.perf_counter()
        cert = conjugate_to_delta(sigma)
        t1 = time.perf_counter()
        form = ff.from_triangular(sigma)
        t2 = time.perf_counter()
        print(json.dumps({
            "k": k,
            "standard_form": standard_form(cert.phi),
            "phi_terms": sum(g.nnz() for g in cert.phi.components),
            "factors": len(form.factors),
            "canon_s": round(t1 - t0, 4),
            "form_s": round(t2 - t1, 4),
        }))


if __name__ == "__main__":
    main()
