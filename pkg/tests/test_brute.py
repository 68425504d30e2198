"""Exhaustive reference search: the oracle the solvers are judged against."""

from __future__ import annotations

import numpy as np
import pytest

from subknap.bounds import exact_knapsack
from subknap.brute import exhaustive_max, exhaustive_subtree_max
from subknap.model import Instance, ModularOracle

from helpers import small_instance, sample_context


def _modular(values, weights, budget):
    return Instance(
        weights=np.asarray(weights, float),
        budget=budget,
        oracle=ModularOracle(np.asarray(values, float)),
    )


def test_degenerate_budget():
    inst = _modular([3.0, 2.0], [1.0, 1.0], 0.5)
    assert exhaustive_max(inst) == (0.0, ())


def test_single_element():
    assert exhaustive_max(_modular([4.0], [1.0], 1.0)) == (4.0, (0,))
    assert exhaustive_max(_modular([4.0], [2.0], 1.0)) == (0.0, ())


def test_tie_breaks_to_lexicographically_smallest():
    # values identical, only one fits: {0} and {1} tie at 1.0
    inst = _modular([1.0, 1.0], [1.0, 1.0], 1.0)
    assert exhaustive_max(inst) == (1.0, (0,))
    # {2} alone ties with {0, 1}: (0, 1) < (2,)
    inst = _modular([1.0, 1.0, 2.0], [1.0, 1.0, 2.0], 2.0)
    assert exhaustive_max(inst) == (2.0, (0, 1))


def test_modular_agrees_with_exact_knapsack():
    rng = np.random.default_rng(30)
    for _ in range(60):
        k = int(rng.integers(1, 11))
        values = rng.uniform(0.0, 5.0, k)
        weights = rng.uniform(0.1, 2.0, k)
        budget = float(rng.uniform(0.0, weights.sum()))
        inst = _modular(values, weights, budget)
        val, sel = exhaustive_max(inst)
        assert val == pytest.approx(exact_knapsack(values, weights, budget), abs=1e-9)
        assert sum(weights[list(sel)]) <= budget + 1e-12


def test_size_limit_enforced():
    inst = _modular(np.ones(5), np.ones(5), 3.0)
    with pytest.raises(ValueError, match="enumeration limit"):
        exhaustive_max(inst, limit_n=4)


def test_subtree_max_includes_node_value():
    rng = np.random.default_rng(31)
    for _ in range(25):
        inst = small_instance(rng, n_hi=9)
        state, cand = sample_context(inst, rng, max_candidates=9)
        got = exhaustive_subtree_max(state, cand.tolist(), inst.weights, inst.budget)
        assert got >= state.value - 1e-12  # X = empty is always on the table
        # definitional re-check: max over all subsets of the candidates
        best = state.value
        for mask in range(1, 1 << len(cand)):
            chosen = [int(cand[i]) for i in range(len(cand)) if mask >> i & 1]
            if state.weight + inst.weights[chosen].sum() <= inst.budget:
                best = max(best, inst.value_of(sorted(state.set_tuple() + tuple(chosen))))
        assert got == pytest.approx(best, abs=1e-9)


def test_subtree_rejects_overweight_node():
    inst = _modular([1.0], [2.0], 1.0)
    heavy = inst.root_state().extend(0)  # weight 2 > budget 1
    with pytest.raises(ValueError, match="exceeds the budget"):
        exhaustive_subtree_max(heavy, [], inst.weights, inst.budget)
