"""
Generate a benchmark batch, race three solvers, plot-ready curves
=================================================================

The same pipeline the command line drives (``subknap gen`` / ``bench`` /
``curves``), called as a library.  Sizes here are toy so the script runs
in seconds; raise n/m/count for a real comparison.
"""

import os
import tempfile

from subknap.benchmarks.generate import GenParams, derived_seed, generate
from subknap.benchmarks.io import read_instance, write_instance
from subknap.harness import format_summary, run_grid, summarize

workdir = tempfile.mkdtemp(prefix="subknap_demo_")

# ten influence instances, each from its own derived seed
paths = []
for i in range(10):
    params = GenParams.defaults(
        "inf", "ours", seed=derived_seed(42, i), n=24, m=60, budget=2.0
    )
    inst = generate(params, name=f"inf_demo_{i:02d}")
    p = os.path.join(workdir, f"{inst.name}.inst")
    write_instance(inst, p)
    paths.append(p)
print(f"wrote {len(paths)} instances under {workdir}")

# the files round-trip exactly, so a batch can be archived and re-run
again = read_instance(paths[0])
assert again.n == 24 and again.name == "inf_demo_00"

# race: plain branch and bound vs the lazy and lazy+reduction variants
records = run_grid(paths, ["basic", "le", "lecr"], time_limit=60.0,
                   csv_path=os.path.join(workdir, "results.csv"))
print()
print(format_summary(summarize(records)))

# cactus-plot input: per solver, sorted wall times vs instances solved
from subknap.harness import solved_curve

print()
for solver in ("basic", "le", "lecr"):
    curve = solved_curve(records, solver)
    t_total = curve[-1][0] if curve else 0.0
    print(f"{solver:>5}: solved {len(curve)}/10, slowest run {t_total:.3f} s")
print(f"\nfull records in {workdir}/results.csv")
