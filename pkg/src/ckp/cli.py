"""Command-line entry point. Every command prints JSON lines (or CSV/LP
text where that is the product) and exits nonzero with a one-line
diagnostic on error."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dp1 import solve_dp1
from .dp2 import solve_dp2
from .errors import CkpError
from .lp import solve_ckp_lp
from .model import Solution, read_instance, write_instance
from .oracle import brute_force_ckp
from .toolkit import GenConfig, export_ilp, filter_trivial, generate, run_bench, summarize, to_csv

DP1_TOGGLES = ("dominance1", "dominance2", "fathoming1", "fathoming2", "fathoming3")
DP2_TOGGLES = ("dominance", "d_reset", "fathoming", "inner_pruning")


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    config = GenConfig(
        family=args.family,
        n=args.n,
        b=args.b,
        m=args.m,
        weight_interval=(args.wlo, args.whi),
        profit_range=(args.plo, args.phi),
        zipf_exponent=args.zipf_exp,
        seed=args.seed,
    )
    _write_or_print(write_instance(generate(config)), args.out)
    return 0


def cmd_filter_trivial(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        raise CkpError(f"not a directory: {directory}")
    total = len(list(directory.glob("*.ckp")))
    found = filter_trivial(directory, move=args.move)
    for f in found:
        _emit({"file": str(f), "trivial": True})
    _emit({"total": total, "trivial": len(found), "fraction": len(found) / total if total else 0.0})
    return 0


def cmd_export_lp(args) -> int:
    _write_or_print(export_ilp(read_instance(args.file)), args.out)
    return 0


def cmd_bench(args) -> int:
    algos = [a for a in args.algos.split(",") if a]
    records = run_bench(args.dir, algos, workers=args.workers)
    _write_or_print(to_csv(records, summarize(records, args.dir)), args.out)
    return 0


def cmd_solve(args) -> int:
    instance = read_instance(args.file)
    toggles = {name: getattr(args, name) for name in DP1_TOGGLES + DP2_TOGGLES if getattr(args, name) is not None}
    allowed = {"dp1": DP1_TOGGLES, "dp2": DP2_TOGGLES, "oracle": ()}[args.algo]
    stray = sorted(set(toggles) - set(allowed))
    if stray:
        raise CkpError(f"--no-{stray[0].replace('_', '-')} does not apply to --algo {args.algo}")
    if args.algo == "oracle":
        res = brute_force_ckp(instance)
        sol: Solution = res.witness
        _emit({"algo": "oracle", **sol.to_dict(), "enumerated": res.count})
        return 0
    common = {"kp_start": not args.no_kp_start, "initial_lb": args.initial_lb}
    solve = solve_dp1 if args.algo == "dp1" else solve_dp2
    result = solve(instance, **common, **toggles)
    _emit({"algo": args.algo, **result.to_dict()})
    return 0


def cmd_lp_relax(args) -> int:
    _emit(solve_ckp_lp(read_instance(args.file)).to_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ckp", description="Exact solvers for the colored knapsack problem.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random instance")
    g.add_argument("--family", choices=("uniform", "zipf"), default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--b", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--wlo", type=float, default=0.1)
    g.add_argument("--whi", type=float, default=0.8)
    g.add_argument("--plo", type=int, default=0)
    g.add_argument("--phi", type=int, default=100_000)
    g.add_argument("--zipf-exp", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("filter-trivial", help="find instances whose plain KP optimum is color-feasible")
    f.add_argument("dir")
    f.add_argument("--move", action="store_true", help="move trivial files into DIR/trivial/")
    f.set_defaults(func=cmd_filter_trivial)

    e = sub.add_parser("export-lp", help="write the binary model in LP format")
    e.add_argument("file")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export_lp)

    b = sub.add_parser("bench", help="time solvers over a directory of *.ckp files")
    b.add_argument("dir")
    b.add_argument("--algos", default="dp1,dp2")
    b.add_argument("--out")
    b.add_argument("--workers", type=int, default=None)
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("solve", help="solve one instance exactly")
    s.add_argument("file")
    s.add_argument("--algo", choices=("dp1", "dp2", "oracle"), default="dp1")
    for name in DP1_TOGGLES + DP2_TOGGLES:
        s.add_argument(f"--no-{name.replace('_', '-')}", dest=name, action="store_false", default=None)
    s.add_argument("--no-kp-start", action="store_true")
    s.add_argument("--initial-lb", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("lp-relax", help="solve the LP relaxation exactly")
    r.add_argument("file")
    r.set_defaults(func=cmd_lp_relax)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CkpError, ValueError, OSError) as exc:
        print(f"ckp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
