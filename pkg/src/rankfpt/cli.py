"""Command-line entry point.

Exit codes: 0 success, 2 input error, 3 resource guard (band too wide).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bench
from .band import DEFAULT_MAX_STATES, SolveReport
from .betweenness import BtRadiusParams, solve_betweenness
from .core import BandTooWide, InstanceError, format_cost
from .fast import solve_fast
from .formats import (ParseError, format_bt, format_fast, parse_bt, parse_fast,
                      parse_votes, read_any)
from .generators import bt_flips, fast_flips
from .kernel import kernelize
from .kra import aggregate, reduce_to_fast
from .oracle import oracle_bt_perm, oracle_fast_perm, oracle_fast_subset

EXIT_INPUT = 2
EXIT_GUARD = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InstanceError(f"cannot read {path}: {e.strerror}") from None


def _report(rep: SolveReport, args, cost_text: str, extra: dict | None = None,
            kernel: bool = True) -> None:
    stats = {"psi": rep.psi, "dp_states": rep.dp_states}
    if kernel:
        stats["kernel_vertices"] = rep.kernel_size
        stats["kernel_shift"] = format_cost(rep.kernel_shift, rep.denom)
        stats["seed_cost"] = format_cost(rep.seed_cost, rep.denom)
    else:
        stats["seed_cost"] = rep.seed_cost
    stats["millis"] = int(round(rep.elapsed * 1000))
    if extra:
        stats.update(extra)
    print("ranking " + " ".join(rep.ranking_names()))
    print(cost_text)
    if args.json:
        print(json.dumps(stats, sort_keys=True))
    else:
        print(" ".join(f"{k} {v}" for k, v in stats.items()))


def _solve_opts(args) -> dict:
    return {"max_states": args.max_states, "psi_cap": args.psi_cap}


def cmd_solve_fast(args) -> int:
    T = parse_fast(_read(args.path))
    rep = solve_fast(T, kernel=not args.no_kernel, method=args.method, **_solve_opts(args))
    _report(rep, args, "cost " + format_cost(rep.cost, rep.denom))
    return 0


def cmd_aggregate(args) -> int:
    P = parse_votes(_read(args.path))
    rep = aggregate(P, kernel=not args.no_kernel, **_solve_opts(args))
    avg = Fraction(rep.cost, rep.denom)
    _report(rep, args, f"cost {format_cost(rep.cost, rep.denom)}\naverage {avg}")
    return 0


def cmd_solve_bt(args) -> int:
    B = parse_bt(_read(args.path))
    params = BtRadiusParams(Fraction(args.alpha1), Fraction(args.alpha2))
    rep = solve_betweenness(B, seed=args.seed, params=params,
                            escalate=not args.no_escalate, **_solve_opts(args))
    _report(rep, args, f"cost {rep.cost}",
            {"certified": rep.certified, "rounds": len(rep.extra["rounds"]),
             "lower_bound": rep.extra["lower_bound"]}, kernel=False)
    return 0


def cmd_gen(args) -> int:
    if args.kind == "fast-flips":
        sys.stdout.write(format_fast(fast_flips(args.n, args.k, args.seed)))
    else:
        sys.stdout.write(format_bt(bt_flips(args.n, args.k, args.seed)))
    return 0


def cmd_bench(args) -> int:
    ks = list(range(args.k_min, args.k_max + 1, args.k_step)) if args.k is None else args.k
    seeds = range(args.seed, args.seed + args.seeds)
    rows = bench.sweep(args.problem, args.n, ks, seeds, workers=args.workers)
    bench.write_csv(rows, sys.stdout)
    return 0


def cmd_kernelize(args) -> int:
    from .fast import approx_ranking
    from .core import fast_cost

    T = parse_fast(_read(args.path))
    upper = fast_cost(T, approx_ranking(T)) if args.bound is None else args.bound
    kr = kernelize(T, upper)
    print(f"kernel {kr.kernel.n} vertices, shift {format_cost(kr.shift, T.denom)}")
    if args.emit:
        sys.stdout.write(format_fast(kr.kernel))
    return 0


def cmd_oracle(args) -> int:
    kind, inst = read_any(args.path)
    if kind == "bt":
        cost, r = oracle_bt_perm(inst)
        print("ranking " + " ".join(r.names(inst.names)))
        print(f"cost {cost}")
        return 0
    T = inst if kind == "fast" else reduce_to_fast(inst)
    cost, r = oracle_fast_perm(T) if T.n <= 8 else oracle_fast_subset(T)
    print("ranking " + " ".join(r.names(T.names)))
    print("cost " + format_cost(cost, T.denom))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rankfpt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--json", action="store_true", help="statistics as JSON")
        sp.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
        sp.add_argument("--psi-cap", type=int, default=None)

    sp = sub.add_parser("solve-fast", help="exact weighted FAST")
    sp.add_argument("path")
    sp.add_argument("--method", choices=("dp", "dc"), default="dp")
    sp.add_argument("--no-kernel", action="store_true")
    solver_flags(sp)
    sp.set_defaults(func=cmd_solve_fast)

    sp = sub.add_parser("aggregate", help="Kemeny aggregation of a votes file")
    sp.add_argument("path")
    sp.add_argument("--no-kernel", action="store_true")
    solver_flags(sp)
    sp.set_defaults(func=cmd_aggregate)

    sp = sub.add_parser("solve-bt", help="exact betweenness tournament")
    sp.add_argument("path")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--alpha1", default="4")
    sp.add_argument("--alpha2", default="4")
    sp.add_argument("--no-escalate", action="store_true")
    solver_flags(sp)
    sp.set_defaults(func=cmd_solve_bt)

    sp = sub.add_parser("gen", help="planted instance on stdout")
    sp.add_argument("kind", choices=("fast-flips", "bt-flips"))
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("seed", type=int, nargs="?", default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="scaling sweep as CSV")
    sp.add_argument("--problem", choices=("fast", "bt"), default="fast")
    sp.add_argument("--n", type=int, nargs="+", default=[200])
    sp.add_argument("--k", type=int, nargs="+", default=None)
    sp.add_argument("--k-min", type=int, default=0)
    sp.add_argument("--k-max", type=int, default=50)
    sp.add_argument("--k-step", type=int, default=10)
    sp.add_argument("--seeds", type=int, default=1, help="instances per (n, k)")
    sp.add_argument("--seed", type=int, default=0, help="first seed")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("kernelize", help="reduce a FAST instance")
    sp.add_argument("path")
    sp.add_argument("--bound", type=int, default=None,
                    help="upper bound U on the optimum (default: seed ranking cost)")
    sp.add_argument("--emit", action="store_true", help="print the kernel instance")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("oracle", help="brute-force optimum of any instance file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {args.path}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BandTooWide as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
