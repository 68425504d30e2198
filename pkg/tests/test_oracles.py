"""Benchmark set functions against from-scratch definitional references."""

from __future__ import annotations

import numpy as np
import pytest

from subknap.benchmarks import CoverageOracle, FacilityOracle, InfluenceOracle

from helpers import small_instance, random_feasible_state


# definitional references, no incremental state involved


def cov_value(subsets, values, X):
    covered = set()
    for i in X:
        covered.update(int(e) for e in subsets[i])
    return sum(values[j] for j in covered)


def loc_value(benefit, X):
    if not X:
        return 0.0
    return float(np.max(benefit[list(X)], axis=0).sum())


def inf_value(arcs, probs, m, X):
    survival = np.ones(m)
    for i in X:
        survival[list(arcs[i])] *= 1.0 - probs[i]
    return float(m - survival.sum())


def test_coverage_hand_example():
    o = CoverageOracle([[0, 1], [1, 2]], [1.0, 1.0, 1.0])
    w = np.ones(2)
    assert o.evaluate([0], w) == pytest.approx(2.0)
    assert o.evaluate([1], w) == pytest.approx(2.0)
    assert o.evaluate([0, 1], w) == pytest.approx(3.0)
    s = o.empty_state(w).extend(0)
    assert s.gain(1) == pytest.approx(1.0)  # only element 2 is new


def test_coverage_weighted_universe_and_empty_subset():
    o = CoverageOracle([[0, 2], [], [2]], [5.0, 1.0, 0.25])
    w = np.ones(3)
    assert o.evaluate([0], w) == pytest.approx(5.25)
    assert o.evaluate([1], w) == 0.0
    st = o.empty_state(w).extend(0)
    assert st.gain(2) == 0.0  # element 2 already covered
    assert st.gain(1) == 0.0


def test_facility_hand_example():
    b = np.array([[1.0, 0.0, 2.0], [2.0, 1.0, 0.0], [0.0, 3.0, 1.0]])
    o = FacilityOracle(b)
    w = np.ones(3)
    assert o.evaluate([0], w) == pytest.approx(3.0)
    assert o.evaluate([0, 1], w) == pytest.approx(5.0)
    assert o.evaluate([0, 1, 2], w) == pytest.approx(7.0)
    st = o.empty_state(w).extend(0)
    assert st.gain(2) == pytest.approx(3.0)  # only customer 1 improves (0 -> 3)


def test_influence_hand_example():
    # two sources, one shared target: f = 1 - (1-p0)(1-p1)
    o = InfluenceOracle([[0], [0]], [0.5, 0.4], m=1)
    w = np.ones(2)
    assert o.evaluate([0], w) == pytest.approx(0.5)
    assert o.evaluate([0, 1], w) == pytest.approx(0.7)
    st = o.empty_state(w).extend(0)
    assert st.gain(1) == pytest.approx(0.4 * 0.5)  # p1 * survival


def test_influence_isolated_source():
    o = InfluenceOracle([[0, 1], []], [0.9, 0.9], m=2)
    w = np.ones(2)
    st = o.empty_state(w).extend(0)
    assert st.gain(1) == 0.0
    assert st.extend(1).value == pytest.approx(st.value)


def test_incremental_matches_scratch_randomized():
    rng = np.random.default_rng(20)
    for _ in range(40):
        inst = small_instance(rng, budget_mode="roomy")
        state, members = random_feasible_state(inst, rng)
        o = inst.oracle
        if isinstance(o, CoverageOracle):
            want = cov_value(o.subsets, o.values, members)
        elif isinstance(o, FacilityOracle):
            want = loc_value(o.benefit, members)
        else:
            want = inf_value(o.arcs, o.probs, o.m, members)
        assert state.value == pytest.approx(want, abs=1e-9)
        # and one extension step agrees with the definitional delta
        rest = [c for c in range(inst.n) if c not in set(members)]
        if not rest:
            continue
        c = int(rng.choice(rest))
        if isinstance(o, CoverageOracle):
            after = cov_value(o.subsets, o.values, members + [c])
        elif isinstance(o, FacilityOracle):
            after = loc_value(o.benefit, members + [c])
        else:
            after = inf_value(o.arcs, o.probs, o.m, members + [c])
        assert state.gain(c) == pytest.approx(after - want, abs=1e-9)


def test_constructor_validation():
    with pytest.raises(ValueError):
        CoverageOracle([[0]], [-1.0])
    with pytest.raises(ValueError):
        CoverageOracle([[3]], [1.0, 1.0])  # id out of range
    with pytest.raises(ValueError):
        FacilityOracle(np.array([1.0, 2.0]))  # not a matrix
    with pytest.raises(ValueError):
        FacilityOracle(np.array([[-0.1]]))
    with pytest.raises(ValueError):
        InfluenceOracle([[0]], [1.5], m=1)
    with pytest.raises(ValueError):
        InfluenceOracle([[0], [0]], [0.5], m=1)  # length mismatch
