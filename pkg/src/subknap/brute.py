"""Exhaustive reference search.  Slow on purpose — this is the ground truth
the exact solvers are tested against, so it shares none of their machinery:
no bounds, no ordering, just include/exclude enumeration of every feasible
subset with one incremental state extension per visited set.  Include
branches whose weight already exceeds the budget are skipped; every superset
would be infeasible too (weights are positive), so nothing feasible is lost.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .model import EvalState, Instance

__all__ = ["exhaustive_max", "exhaustive_subtree_max"]


def exhaustive_max(instance: Instance, limit_n: int = 22) -> tuple[float, tuple[int, ...]]:
    """(optimal value, optimal set) by enumeration of all feasible subsets.

    Ties go to the lexicographically smallest sorted index tuple, so the
    result is unique and deterministic.  Refuses n > limit_n (2^n blow-up).
    """
    if instance.n > limit_n:
        raise ValueError(f"n={instance.n} exceeds the enumeration limit {limit_n}")
    best_val, best_set = _search(
        instance.root_state(),
        list(range(instance.n)),
        instance.weights,
        instance.budget,
    )
    return best_val, best_set


def exhaustive_subtree_max(
    state: EvalState,
    candidates: Sequence[int],
    weights: np.ndarray,
    budget: float,
    limit_n: int = 22,
) -> float:
    """max f(S + X) over X subseteq candidates with w(S + X) <= budget.

    ``state`` is the evaluation snapshot at S; the returned value includes
    f(S) itself (X = empty is always feasible since w(S) <= budget must hold).
    """
    if len(candidates) > limit_n:
        raise ValueError(f"|candidates|={len(candidates)} exceeds limit {limit_n}")
    if state.weight > budget + 1e-12:
        raise ValueError("node weight already exceeds the budget")
    val, _ = _search(state, [int(c) for c in candidates], weights, budget)
    return val


def _search(
    state: EvalState, candidates: list[int], weights: np.ndarray, budget: float
) -> tuple[float, tuple[int, ...]]:
    best_val = -np.inf
    best_set: tuple[int, ...] = ()

    def rec(st: EvalState, i: int) -> None:
        nonlocal best_val, best_set
        if i == len(candidates):
            here = st.set_tuple()
            if st.value > best_val or (st.value == best_val and here < best_set):
                best_val, best_set = st.value, here
            return
        c = candidates[i]
        if st.weight + weights[c] <= budget:
            rec(st.extend(c), i + 1)
        rec(st, i + 1)

    rec(state, 0)
    return float(best_val), best_set
