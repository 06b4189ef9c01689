"""Invariant suite behind ``triperm verify``.

Each check returns a (passed, detail) pair; ``run_suite`` collects them into
a machine-readable summary.  Sizes are controlled by one ``Sizes`` record.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import fastforward as ff
from . import intpoly, oracle, trigroup, zflow
from .ffring import ReducedPoly, grid_interpolate, substitute, value_table


@dataclass
class Sizes:
    seed: int = 0
    random_maps: int = 50
    ff_triples: int = 200
    exhaustive: tuple[tuple[int, int], ...] = ((2, 2), (3, 2), (2, 3))


def _rng(sizes: Sizes) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(sizes.seed))


def check_ring_bijection(sizes: Sizes):
    rng = _rng(sizes)
    for p, k in [(2, 3), (3, 2), (5, 2), (7, 1)]:
        for _ in range(sizes.random_maps // 5 + 1):
            f = ReducedPoly(p, k, rng.integers(0, p, p**k))
            if grid_interpolate(value_table(f), p, k) != f:
                return False, f"interpolation does not invert evaluation for p={p}, k={k}"
    return True, "value table <-> coefficients round-trips"


def check_substitution_associative(sizes: Sizes):
    rng = _rng(sizes)
    p, k = 3, 2
    for _ in range(sizes.random_maps // 5 + 1):
        f = ReducedPoly(p, k, rng.integers(0, p, p**k))
        G = [ReducedPoly(p, k, rng.integers(0, p, p**k)) for _ in range(k)]
        H = [ReducedPoly(p, k, rng.integers(0, p, p**k)) for _ in range(k)]
        if substitute(substitute(f, G), H) != substitute(f, [substitute(g, H) for g in G]):
            return False, "substitution is not associative"
    return True, "substitution associative"


def check_ostafe(sizes: Sizes):
    for p, n in sizes.exhaustive:
        for s in oracle.enumerate_group(p, n):
            maximal = trigroup.is_maximal_orbit(s)[0]
            ct = oracle.cycle_type(oracle.to_table(s))
            if maximal != (ct == {p**n: 1}) or maximal != (oracle.star_kernel_dim(s) == 1):
                return False, f"criterion disagrees with the oracle for {s}"
    return True, f"exhaustive on {list(sizes.exhaustive)}"


def check_group_order(sizes: Sizes):
    for p, n in sizes.exhaustive:
        if oracle.enumerate_count(p, n) != oracle.group_order(p, n):
            return False, f"order mismatch for p={p}, n={n}"
    return True, "enumeration matches p^((p^n-1)/(p-1))"


def check_shift_formula(sizes: Sizes):
    rng = _rng(sizes)
    for _ in range(sizes.random_maps):
        p, n = [(2, 4), (3, 3), (5, 2), (3, 4)][int(rng.integers(0, 4))]
        s = trigroup.random_triangular(p, n, rng, maximal=True)
        c = trigroup.invariants(s)
        shifted = trigroup.power(s, p ** (n - 1))
        want = trigroup.elementary(p, n, n, ReducedPoly.constant(p, n - 1, (-1) ** (n - 1) * c[-1]))
        if shifted != want:
            return False, f"shift formula fails for {s}"
    return True, "sigma^(p^(n-1)) adds (-1)^(n-1) c_n"


def check_canonicalization(sizes: Sizes):
    rng = _rng(sizes)
    for _ in range(sizes.random_maps):
        s = trigroup.random_triangular(3, 3, rng, maximal=True)
        cert = trigroup.conjugate_to_delta(s)
        if not (cert.verify(s) and trigroup.standard_form(cert.phi)):
            return False, f"bad certificate for {s}"
        if trigroup.conjugate_to_delta(s) != cert:
            return False, "certificate is not deterministic"
    return True, "certificates reproduce Delta"


def check_fastforward(sizes: Sizes):
    rng = _rng(sizes)
    done = 0
    while done < sizes.ff_triples:
        p, n = [(2, 6), (3, 4), (5, 3), (3, 6)][done % 4]
        if done % 2:
            form = ff.sparse_generate(p, n, n, int(rng.integers(0, 2**32)), wrap=bool(done % 4 == 1))
        else:
            form = ff.from_triangular(trigroup.random_triangular(p, n, rng, maximal=True))
        table = ff.form_table(form)
        for _ in range(20):
            m = int(rng.integers(0, p**n))
            v = tuple(int(x) for x in rng.integers(0, p, n))
            got = trigroup.zeta_inv(ff.eval_power(form, m, v), p)
            if got != oracle.naive_orbit_power(table, m, trigroup.zeta_inv(v, p)):
                return False, f"eval_power disagrees at m={m}, v={v}"
            done += 1
    return True, f"{done} (form, m, v) triples"


def check_lucas(sizes: Sizes):
    for p in (2, 3):
        for d in range(p**3):
            g = intpoly.tau_reduce(intpoly.BinomialPoly({d: 1}), p)
            for m in range(p**3):
                if intpoly.eval_qpoly(g, m) != math.comb(m, d) % p:
                    return False, f"tau_reduce(C(T,{d})) wrong at m={m}, p={p}"
    return True, "tau_reduce agrees with C(m, d) mod p"


def check_flows(sizes: Sizes):
    for p, n in sizes.exhaustive:
        for s in oracle.enumerate_group(p, n):
            f = zflow.build_flow(s)
            rep = zflow.w_membership(f)
            if not rep.ok or rep.lambdas != zflow.expected_lambdas(s):
                return False, f"W membership fails for {s}"
            cur = trigroup.identity(p, n)
            for m in range(p**n):
                if zflow.specialize(f, m) != cur:
                    return False, f"specialize({m}) != sigma^{m} for {s}"
                cur = trigroup.compose(s, cur)
    return True, "flows specialize to powers; W_i membership holds"


def check_mth_root(sizes: Sizes):
    rng = _rng(sizes)
    for _ in range(sizes.random_maps):
        p, n = [(2, 3), (3, 2), (5, 2)][int(rng.integers(0, 3))]
        s = trigroup.random_triangular(p, n, rng)
        m = int(rng.integers(1, 200))
        while math.gcd(m, p) != 1:
            m += 1
        if trigroup.power(trigroup.mth_root(s, m), m) != s:
            return False, f"mth_root fails for m={m}"
    return True, "power(mth_root(s, m), m) == s"


CHECKS: dict[str, Callable[[Sizes], tuple[bool, str]]] = {
    "ring_bijection": check_ring_bijection,
    "substitution_associative": check_substitution_associative,
    "group_order": check_group_order,
    "ostafe_equivalence": check_ostafe,
    "shift_formula": check_shift_formula,
    "canonicalization": check_canonicalization,
    "fastforward": check_fastforward,
    "lucas_digits": check_lucas,
    "flows": check_flows,
    "mth_root": check_mth_root,
}


def run_suite(sizes: Sizes | None = None) -> dict:
    sizes = sizes or Sizes()
    results = []
    for name, check in CHECKS.items():
        t0 = time.perf_counter()
        try:
            ok, detail = check(sizes)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(
            {"check": name, "passed": ok, "detail": detail, "seconds": round(time.perf_counter() - t0, 3)}
        )
    return {
        "passed": all(r["passed"] for r in results),
        "sizes": {k: v for k, v in asdict(sizes).items()},
        "results": results,
    }
