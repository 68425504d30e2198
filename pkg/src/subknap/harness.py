"""Benchmark harness: run solvers over instance files, record results as CSV.

One run = (instance file, solver name, time limit) -> :class:`RunRecord`.
Records append to CSV under a file lock so parallel jobs (and parallel CLI
invocations) can share one results file.  Parallelism is across runs only —
a single solve is never split.

Summary convention: for each solver we report how many instances it solved
(status optimal) and its mean wall time / node count over its *own* solved
set.  Because those sets differ between solvers, each non-reference row also
restates the first (reference) solver's means over the instances both
finished — the parenthesized numbers make time comparisons apples-to-apples.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, fields
from typing import Callable, Iterable, Sequence

from filelock import FileLock

from .benchmarks.io import read_instance
from .bestfirst import best_first_solve
from .model import Instance
from .solver import SolveReport, SolverConfig, Variant, solve

__all__ = [
    "SOLVERS",
    "RunRecord",
    "record_from",
    "run_solver",
    "run_one",
    "run_grid",
    "append_records",
    "read_records",
    "summarize",
    "format_summary",
    "solved_curve",
]


def _df(variant: Variant) -> Callable[[Instance, float], SolveReport]:
    def runner(instance: Instance, time_limit: float) -> SolveReport:
        return solve(instance, SolverConfig(variant=variant, time_limit=time_limit))

    return runner


def _bf(heuristic: str) -> Callable[[Instance, float], SolveReport]:
    def runner(instance: Instance, time_limit: float) -> SolveReport:
        return best_first_solve(instance, heuristic=heuristic, time_limit=time_limit)

    return runner


SOLVERS: dict[str, Callable[[Instance, float], SolveReport]] = {
    "basic": _df(Variant.BASIC),
    "basic+": _df(Variant.BASIC_PLUS),
    "le": _df(Variant.LAZY),
    "ep": _df(Variant.EARLY_PRUNING),
    "cr": _df(Variant.REDUCTION),
    "lecr": _df(Variant.LAZY_REDUCTION),
    "umod": _bf("umod"),
    "udom": _bf("udom"),
}


@dataclass(frozen=True)
class RunRecord:
    instance_id: str
    problem: str
    methodology: str
    solver: str
    status: str
    best_value: float
    wall_time_s: float
    nodes: int
    evals: int
    seed: int | None

    @property
    def solved(self) -> bool:
        return self.status == "optimal"


_FIELDS = [f.name for f in fields(RunRecord)]


def run_solver(instance: Instance, solver: str, time_limit: float) -> SolveReport:
    try:
        runner = SOLVERS[solver]
    except KeyError:
        raise ValueError(f"unknown solver {solver!r}; choose from {sorted(SOLVERS)}")
    return runner(instance, time_limit)


def record_from(instance: Instance, solver: str, report: SolveReport) -> RunRecord:
    return RunRecord(
        instance_id=instance.name,
        problem=instance.problem,
        methodology=instance.methodology,
        solver=solver,
        status=report.status.value,
        best_value=report.best_value,
        wall_time_s=report.wall_time,
        nodes=report.nodes,
        evals=report.evals,
        seed=instance.seed,
    )


def run_one(path: str | os.PathLike, solver: str, time_limit: float) -> RunRecord:
    instance = read_instance(path)
    return record_from(instance, solver, run_solver(instance, solver, time_limit))


def run_grid(
    paths: Sequence[str | os.PathLike],
    solvers: Sequence[str],
    time_limit: float,
    jobs: int = 1,
    csv_path: str | os.PathLike | None = None,
    progress: Callable[[RunRecord], None] | None = None,
) -> list[RunRecord]:
    """Every solver on every instance.  jobs > 1 parallelizes across runs."""
    for s in solvers:
        if s not in SOLVERS:
            raise ValueError(f"unknown solver {s!r}; choose from {sorted(SOLVERS)}")
    tasks = [(os.fspath(p), s) for p in paths for s in solvers]
    records: list[RunRecord] = []

    def note(rec: RunRecord) -> None:
        records.append(rec)
        if csv_path is not None:
            append_records(csv_path, [rec])
        if progress is not None:
            progress(rec)

    if jobs <= 1:
        for path, solver in tasks:
            note(run_one(path, solver, time_limit))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_one, path, s, time_limit) for path, s in tasks]
            for fut in as_completed(futures):
                note(fut.result())
    return records


def append_records(csv_path: str | os.PathLike, records: Iterable[RunRecord]) -> None:
    """Append rows, creating the file (with header) if needed.  Lock-guarded."""
    csv_path = os.fspath(csv_path)
    lock = FileLock(csv_path + ".lock")
    with lock:
        fresh = not os.path.exists(csv_path) or os.path.getsize(csv_path) == 0
        with open(csv_path, "a", newline="") as fh:
            writer = csv.writer(fh)
            if fresh:
                writer.writerow(_FIELDS)
            for r in records:
                writer.writerow(
                    [
                        r.instance_id,
                        r.problem,
                        r.methodology,
                        r.solver,
                        r.status,
                        repr(r.best_value),
                        f"{r.wall_time_s:.6f}",
                        r.nodes,
                        r.evals,
                        "" if r.seed is None else r.seed,
                    ]
                )


def read_records(csv_path: str | os.PathLike) -> list[RunRecord]:
    out = []
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != _FIELDS:
            raise ValueError(
                f"{csv_path}: unexpected CSV header {reader.fieldnames!r}"
            )
        for row in reader:
            out.append(
                RunRecord(
                    instance_id=row["instance_id"],
                    problem=row["problem"],
                    methodology=row["methodology"],
                    solver=row["solver"],
                    status=row["status"],
                    best_value=float(row["best_value"]),
                    wall_time_s=float(row["wall_time_s"]),
                    nodes=int(row["nodes"]),
                    evals=int(row["evals"]),
                    seed=int(row["seed"]) if row["seed"] else None,
                )
            )
    return out


def summarize(records: Sequence[RunRecord]) -> dict:
    """Per-solver stats + reference co-solved means (see module docstring)."""
    solvers: list[str] = []
    for r in records:
        if r.solver not in solvers:
            solvers.append(r.solver)
    by_solver = {s: [r for r in records if r.solver == s] for s in solvers}

    def mean(xs: list[float]) -> float | None:
        return sum(xs) / len(xs) if xs else None

    table = {}
    for s in solvers:
        solved = [r for r in by_solver[s] if r.solved]
        table[s] = {
            "runs": len(by_solver[s]),
            "solved": len(solved),
            "mean_time": mean([r.wall_time_s for r in solved]),
            "mean_nodes": mean([float(r.nodes) for r in solved]),
        }
    ref = solvers[0] if solvers else None
    if ref is not None:
        ref_solved = {r.instance_id for r in by_solver[ref] if r.solved}
        for s in solvers[1:]:
            both = ref_solved & {r.instance_id for r in by_solver[s] if r.solved}
            ref_rows = [r for r in by_solver[ref] if r.instance_id in both and r.solved]
            table[s]["co_solved"] = len(both)
            table[s]["ref_time_co"] = mean([r.wall_time_s for r in ref_rows])
            table[s]["ref_nodes_co"] = mean([float(r.nodes) for r in ref_rows])
    return {"reference": ref, "solvers": table}


def format_summary(summary: dict) -> str:
    ref = summary["reference"]
    lines = [
        f"{'solver':<8} {'solved':>10} {'mean time (s)':>14} {'mean nodes':>14}"
        f"   [vs {ref}: its co-solved means]"
    ]

    def num(x, fmt):
        return format(x, fmt) if x is not None else "-"

    for s, row in summary["solvers"].items():
        line = (
            f"{s:<8} {row['solved']:>5}/{row['runs']:<4} "
            f"{num(row['mean_time'], '>14.3f')} {num(row['mean_nodes'], '>14.1f')}"
        )
        if "co_solved" in row:
            line += (
                f"   ({ref} on {row['co_solved']} co-solved: "
                f"{num(row['ref_time_co'], '.3f')} s, {num(row['ref_nodes_co'], '.1f')} nodes)"
            )
        lines.append(line)
    return "\n".join(lines)


def solved_curve(records: Sequence[RunRecord], solver: str) -> list[tuple[float, int]]:
    """(wall time, cumulative solved count) steps for one solver."""
    times = sorted(r.wall_time_s for r in records if r.solver == solver and r.solved)
    return [(t, i + 1) for i, t in enumerate(times)]
