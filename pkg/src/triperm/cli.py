"""``triperm`` command line.

Exit codes: 0 success, 1 domain or resource error, 2 usage error.
Points are comma-separated digits, least significant first (the zeta order).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import fastforward as ff
from . import trigroup, zflow
from .documents import emit_map, parse_map
from .errors import DomainError, ResourceError, UsageError
from .ffring import MultCounter
from .trigroup import TriangularPermutation
from .verify import Sizes, run_suite


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _read(path: str | None):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_map(text)


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _expect(obj, *types):
    if not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise UsageError(f"this command needs a {names} document, got {type(obj).__name__}")
    return obj


def _form_of(obj) -> ff.FastForwardForm:
    if isinstance(obj, ff.FastForwardForm):
        return obj
    return ff.from_triangular(_expect(obj, TriangularPermutation))


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.budget is not None:
        form = ff.sparse_generate(args.p, args.n, args.budget, args.seed, args.wrap)
        _write(emit_map(form), args.out)
        return 0
    if args.wrap:
        raise UsageError("--wrap needs --budget (it only applies to sparse forms)")
    rng = np.random.Generator(np.random.PCG64(args.seed))
    sigma = trigroup.random_triangular(args.p, args.n, rng, maximal=args.maximal)
    _write(emit_map(sigma), args.out)
    return 0


def cmd_inspect(args) -> int:
    sigma = _expect(_read(args.inp), TriangularPermutation)
    ok, lam = trigroup.is_maximal_orbit(sigma)
    _emit_json(
        {
            "p": sigma.p,
            "n": sigma.n,
            "maximal_orbit": ok,
            "invariants": list(lam) if ok else None,
            "top_coefficients": list(trigroup.invariants(sigma)),
            "standard_form": trigroup.standard_form(sigma),
        }
    )
    return 0


def cmd_canon(args) -> int:
    sigma = _expect(_read(args.inp), TriangularPermutation)
    cert = trigroup.conjugate_to_delta(sigma)
    rep, e = trigroup.standard_form_representative(sigma)
    _write(emit_map(cert, representative=rep.to_dict(), exponent=e), args.out)
    return 0


def cmd_eval(args) -> int:
    obj = _read(args.inp)
    v = _ints(args.v)
    c = MultCounter()
    if isinstance(obj, TriangularPermutation):
        w = trigroup.apply(obj, v, c)
    else:
        w = ff.eval_power(_expect(obj, ff.FastForwardForm), 1, v, c)
    out = {"point": list(w)}
    if args.count_mults:
        out["mults"] = c.count
    _emit_json(out)
    return 0


def cmd_iter(args) -> int:
    obj = _read(args.inp)
    v = _ints(args.v)
    c = MultCounter()
    if args.naive:
        if isinstance(obj, TriangularPermutation):
            w = tuple(v)
            for _ in range(args.m % obj.size):
                w = trigroup.apply(obj, w, c)
        else:
            w = ff.naive_power(_expect(obj, ff.FastForwardForm), args.m, v, c)
    else:
        w = ff.eval_power(_form_of(obj), args.m, v, c)
    out = {"point": list(w), "m": args.m, "method": "naive" if args.naive else "fast-forward"}
    if args.count_mults:
        out["mults"] = c.count
    _emit_json(out)
    return 0


def cmd_flow(args) -> int:
    if args.action == "build":
        sigma = _expect(_read(args.inp), TriangularPermutation)
        _write(emit_map(zflow.build_flow(sigma)), args.out)
    elif args.action == "specialize":
        if args.m is None:
            raise UsageError("flow specialize needs -m")
        flow = _expect(_read(args.inp), zflow.FlowMap, zflow.LevelFlow)
        if isinstance(flow, zflow.LevelFlow):
            _write(emit_map(zflow.specialize_level(flow, args.m)), args.out)
        else:
            _write(emit_map(zflow.specialize(flow, args.m)), args.out)
    elif args.action == "check-w":
        flow = _expect(_read(args.inp), zflow.FlowMap)
        rep = zflow.w_membership(flow)
        _emit_json(rep.to_dict())
        return 0 if rep.ok else 1
    elif args.action == "level":
        if args.i is None:
            raise UsageError("flow level needs -i")
        sigma = _expect(_read(args.inp), TriangularPermutation)
        _write(emit_map(zflow.level_flow(sigma, args.i)), args.out)
    return 0


def cmd_verify(args) -> int:
    sizes = Sizes(seed=args.seed)
    if args.quick:
        sizes = Sizes(seed=args.seed, random_maps=10, ff_triples=40, exhaustive=((2, 2), (3, 2)))
    summary = run_suite(sizes)
    _emit_json(summary)
    return 0 if summary["passed"] else 1


def cmd_bench(args) -> int:
    for p in _ints(args.p):
        for n in _ints(args.n):
            budget = n if args.budget is None else args.budget
            form = ff.sparse_generate(p, n, budget, args.seed, args.wrap)
            rec = ff.count_report(form, args.trials, args.seed, naive_cap=args.naive_cap)
            _emit_json(rec)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="triperm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="random triangular map or sparse fast-forward form")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--budget", type=int, help="monomials per factor; selects a sparse form")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--wrap", action="store_true", help="add a lower triangular conjugator")
    g.add_argument("--maximal", action="store_true", help="force a maximal-orbit triangular map")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("inspect", help="maximal-orbit flag and invariants")
    i.add_argument("--in", dest="inp")
    i.set_defaults(func=cmd_inspect)

    c = sub.add_parser("canon", help="standard form and conjugation certificate")
    c.add_argument("--in", dest="inp")
    c.add_argument("--out")
    c.set_defaults(func=cmd_canon)

    e = sub.add_parser("eval", help="apply a map once")
    e.add_argument("--in", dest="inp")
    e.add_argument("-v", required=True, help="point, e.g. 0,1,2")
    e.add_argument("--count-mults", action="store_true")
    e.set_defaults(func=cmd_eval)

    it = sub.add_parser("iter", help="sigma^m(v)")
    it.add_argument("--in", dest="inp")
    it.add_argument("-m", type=int, required=True)
    it.add_argument("-v", required=True)
    it.add_argument("--naive", action="store_true", help="apply the map m times")
    it.add_argument("--count-mults", action="store_true")
    it.set_defaults(func=cmd_iter)

    fl = sub.add_parser("flow", help="Z-flows")
    fl.add_argument("action", choices=["build", "specialize", "check-w", "level"])
    fl.add_argument("--in", dest="inp")
    fl.add_argument("--out")
    fl.add_argument("-m", type=int)
    fl.add_argument("-i", type=int)
    fl.set_defaults(func=cmd_flow)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--quick", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="multiplication counts, one JSON record per line")
    b.add_argument("--p", default="2,5")
    b.add_argument("--n", default="4,8")
    b.add_argument("--budget", type=int, help="monomials per factor (default: n)")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--wrap", action="store_true")
    b.add_argument("--naive-cap", type=int, default=4096)
    b.set_defaults(func=cmd_bench)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"triperm: usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ResourceError) as exc:
        print(f"triperm: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
