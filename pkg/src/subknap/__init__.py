"""Exact solvers for monotone submodular maximization under a knapsack constraint.

The depth-first family (`solve`) covers the plain branch-and-bound and its
accelerated variants (lazy gain evaluation, early pruning, candidate
reduction); `best_first_solve` provides the priority-frontier baselines.
Benchmark generators, real-data loaders, an instance file format and a
brute-force reference live in the submodules.
"""

from .model import (
    EvalState,
    GainEntry,
    Instance,
    ModularOracle,
    TableOracle,
    ValueOracle,
    canonical_set,
    weight_of,
)
from .bounds import (
    FractionalResult,
    exact_knapsack,
    forced_completion_values,
    fractional_bound,
    fractional_knapsack,
    greedy_order,
    knapsack_bound,
    lazy_fractional_bound,
)
from .solver import SolveReport, SolverConfig, Status, Variant, ratio_greedy, solve
from .bestfirst import best_first_solve, greedy_udom, u_dom, u_mod
from .brute import exhaustive_max, exhaustive_subtree_max

__version__ = "0.1.0"

__all__ = [
    "EvalState",
    "GainEntry",
    "Instance",
    "ModularOracle",
    "TableOracle",
    "ValueOracle",
    "canonical_set",
    "weight_of",
    "FractionalResult",
    "exact_knapsack",
    "forced_completion_values",
    "fractional_bound",
    "fractional_knapsack",
    "greedy_order",
    "knapsack_bound",
    "lazy_fractional_bound",
    "SolveReport",
    "SolverConfig",
    "Status",
    "Variant",
    "ratio_greedy",
    "solve",
    "best_first_solve",
    "greedy_udom",
    "u_dom",
    "u_mod",
    "exhaustive_max",
    "exhaustive_subtree_max",
]
