"""Command-line front end.

    subknap gen     --problem cov --methodology ours --count 10 --seed 7 --out DIR
    subknap solve   INSTANCE --solver lecr [--time-limit 60] [--out results.csv]
    subknap bench   MANIFEST --solver basic --solver lecr --time-limit 60
                    [--jobs 4] [--out results.csv]
    subknap curves  results.csv --out DIR
    subknap verify  MANIFEST [--limit-n 18] [--time-limit 60]

``gen`` writes one instance file per index plus ``manifest.txt`` (one path
per line, '#' comments); per-instance seeds derive from the master seed and
the index, so regenerating with the same arguments reproduces the files
byte for byte.  ``bench`` appends one CSV row per (instance, solver) run and
prints the summary table.  ``curves`` turns a results CSV into one
whitespace-separated  "wall-time  solved-count"  file per solver (the usual
cactus-plot input).  ``verify`` cross-checks every solver against exhaustive
enumeration on all manifest instances small enough to enumerate; exit code 1
on any mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import __version__
from .benchmarks.generate import METHODOLOGIES, PROBLEMS, GenParams, derived_seed, generate
from .benchmarks.io import read_instance, write_instance
from .brute import exhaustive_max
from .harness import (
    SOLVERS,
    append_records,
    format_summary,
    read_records,
    record_from,
    run_grid,
    run_solver,
    solved_curve,
    summarize,
)

__all__ = ["main"]


def _add_solver_arg(p: argparse.ArgumentParser, multiple: bool) -> None:
    help_ = "solver name: " + ", ".join(SOLVERS)
    if multiple:
        p.add_argument(
            "--solver",
            action="append",
            default=None,
            metavar="NAME",
            help=help_ + " (repeat or comma-separate for several)",
        )
    else:
        p.add_argument("--solver", default="basic", metavar="NAME", help=help_)


def _solver_list(raw: list[str] | None) -> list[str]:
    if not raw:
        return ["basic"]
    out: list[str] = []
    for item in raw:
        for name in item.split(","):
            name = name.strip()
            if name and name not in out:
                out.append(name)
    return out


def _read_manifest(path: str) -> list[str]:
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            entries.append(line if os.path.isabs(line) else os.path.join(base, line))
    if not entries:
        raise SystemExit(f"manifest {path} lists no instances")
    return entries


def _cmd_gen(args: argparse.Namespace) -> int:
    os.makedirs(args.out, exist_ok=True)
    names = []
    for i in range(args.count):
        params = GenParams.defaults(
            args.problem,
            args.methodology,
            seed=derived_seed(args.seed, i),
            n=args.n,
            m=args.m,
            budget=args.budget,
            low_activation=args.low_activation,
        )
        name = f"{args.problem}_{args.methodology}_{i:03d}"
        inst = generate(params, name=name)
        write_instance(inst, os.path.join(args.out, name + ".inst"))
        names.append(name + ".inst")
    manifest = os.path.join(args.out, "manifest.txt")
    with open(manifest, "w") as fh:
        fh.write(
            f"# subknap manifest: problem={args.problem}"
            f" methodology={args.methodology} seed={args.seed} count={args.count}\n"
        )
        for name in names:
            fh.write(name + "\n")
    print(f"wrote {args.count} instances and {manifest}")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = read_instance(args.instance)
    report = run_solver(instance, args.solver, args.time_limit)
    record = record_from(instance, args.solver, report)
    print(
        f"{record.instance_id}: {record.solver} -> {record.status}, "
        f"value {record.best_value:.9g}, {record.nodes} nodes, "
        f"{record.evals} evals, {record.wall_time_s:.3f} s"
    )
    if args.show_set:
        print(f"  best set: {list(report.best_set)}")
    if args.out:
        append_records(args.out, [record])
        print(f"  appended to {args.out}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    solvers = _solver_list(args.solver)
    paths = _read_manifest(args.manifest)

    def progress(rec):
        print(
            f"  {rec.instance_id:<24} {rec.solver:<7} {rec.status:<8} "
            f"{rec.wall_time_s:9.3f} s  {rec.nodes} nodes",
            flush=True,
        )

    records = run_grid(
        paths,
        solvers,
        time_limit=args.time_limit,
        jobs=args.jobs,
        csv_path=args.out,
        progress=progress if not args.quiet else None,
    )
    print(format_summary(summarize(records)))
    if args.out:
        print(f"records appended to {args.out}")
    return 0


def _cmd_curves(args: argparse.Namespace) -> int:
    records = read_records(args.results)
    os.makedirs(args.out, exist_ok=True)
    solvers = []
    for r in records:
        if r.solver not in solvers:
            solvers.append(r.solver)
    for s in solvers:
        curve = solved_curve(records, s)
        path = os.path.join(args.out, f"{s}.curve")
        with open(path, "w") as fh:
            for t, count in curve:
                fh.write(f"{t:.6f} {count}\n")
        print(f"{path}: {len(curve)} solved runs")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    paths = _read_manifest(args.manifest)
    failures = 0
    checked = 0
    for path in paths:
        inst = read_instance(path)
        if inst.n > args.limit_n:
            print(f"{inst.name}: skipped (n={inst.n} > {args.limit_n})")
            continue
        checked += 1
        opt_val, _opt_set = exhaustive_max(inst, limit_n=args.limit_n)
        verdicts = []
        for solver in SOLVERS:
            report = run_solver(inst, solver, args.time_limit)
            ok = (
                report.status.value == "optimal"
                and abs(report.best_value - opt_val) <= 1e-6
            )
            if not ok:
                failures += 1
                verdicts.append(
                    f"{solver}: {report.status.value} value {report.best_value!r}"
                )
        if verdicts:
            print(f"{inst.name}: MISMATCH vs exhaustive {opt_val!r} -> {verdicts}")
        else:
            print(f"{inst.name}: ok (optimum {opt_val:.9g}, all {len(SOLVERS)} solvers)")
    if checked == 0:
        print("nothing verified (all instances above the enumeration limit)")
    return 1 if failures else 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="subknap",
        description="exact submodular-knapsack solvers: generate, solve, benchmark",
    )
    parser.add_argument("--version", action="version", version=f"subknap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate benchmark instances + manifest")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--methodology", required=True, choices=METHODOLOGIES)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="master seed (per-instance seeds derive from it)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--n", type=int, default=None, help="override element count")
    p.add_argument("--m", type=int, default=None, help="override universe/target count")
    p.add_argument("--budget", type=float, default=None)
    p.add_argument(
        "--low-activation",
        action="store_true",
        help="inf/sakaue: draw activation probabilities from U[0,0.1] instead of U[0,1]",
    )
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="run one solver on one instance file")
    p.add_argument("instance")
    _add_solver_arg(p, multiple=False)
    p.add_argument("--time-limit", type=float, default=3600.0)
    p.add_argument("--out", default=None, help="append the run record to this CSV")
    p.add_argument("--show-set", action="store_true", help="also print the best set")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="run solver(s) over a manifest of instances")
    p.add_argument("manifest")
    _add_solver_arg(p, multiple=True)
    p.add_argument("--time-limit", type=float, default=3600.0)
    p.add_argument("--jobs", type=int, default=1, help="parallel runs (instance-level)")
    p.add_argument("--out", default=None, help="append run records to this CSV")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("curves", help="per-solver solved-vs-time curve files from a results CSV")
    p.add_argument("results")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("verify", help="cross-check all solvers against exhaustive enumeration")
    p.add_argument("manifest")
    p.add_argument("--limit-n", type=int, default=18)
    p.add_argument("--time-limit", type=float, default=60.0)
    p.set_defaults(func=_cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
