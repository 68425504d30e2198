"""The three benchmark set functions, each with an incremental evaluation state.

All three are monotone, normalized and submodular:

* weighted coverage (cov): elements own subsets E_i of a weighted universe,
  f(X) = total value of the union of the chosen subsets;
* facility location (loc): benefit matrix v[i, j], each customer j is served
  by the best chosen location, f(X) = sum_j max_{i in X} v[i, j] (0 if X empty);
* bipartite influence (inf): sources activate independently each target they
  have an arc to, with the source's probability; f(X) = expected number of
  activated targets = sum_j (1 - prod_{i in X, (i,j) arc} (1 - p_i)).

The incremental states keep, respectively: covered-universe indicators,
per-customer best benefit, and per-target survival probability (product of
(1 - p_i) over chosen in-neighbours).  Each makes a marginal-gain query O(m)
or better instead of a from-scratch pass over the whole set.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..model import EvalState, ValueOracle

__all__ = ["CoverageOracle", "FacilityOracle", "InfluenceOracle"]


def _index_lists(raw: Sequence[Sequence[int]], m: int, what: str) -> list[np.ndarray]:
    out = []
    for i, members in enumerate(raw):
        arr = np.asarray(sorted(set(int(e) for e in members)), dtype=np.int64)
        if len(arr) and (arr[0] < 0 or arr[-1] >= m):
            raise ValueError(f"{what} {i} references ids outside range(0, {m})")
        out.append(arr)
    return out


# ---------------------------------------------------------------------------
# weighted coverage
# ---------------------------------------------------------------------------


class _CovState(EvalState):
    __slots__ = ("oracle", "covered")

    def __init__(self, weights: np.ndarray, oracle: "CoverageOracle") -> None:
        super().__init__(weights)
        self.oracle = oracle
        self.covered = np.zeros(oracle.m, dtype=bool)

    def _gain(self, c: int) -> float:
        cols = self.oracle.subsets[c]
        if not len(cols):
            return 0.0
        return float(self.oracle.values[cols[~self.covered[cols]]].sum())

    def _copy(self) -> "_CovState":
        new = object.__new__(_CovState)
        new.oracle = self.oracle
        new.covered = self.covered.copy()
        return new

    def _apply(self, c: int) -> float:
        cols = self.oracle.subsets[c]
        if not len(cols):
            return 0.0
        fresh = cols[~self.covered[cols]]
        self.covered[fresh] = True
        return float(self.oracle.values[fresh].sum())


class CoverageOracle(ValueOracle):
    """f(X) = sum of values of universe elements covered by any chosen subset."""

    def __init__(self, subsets: Sequence[Sequence[int]], values: Sequence[float]) -> None:
        self.values = np.asarray(values, dtype=float)
        if np.any(self.values < 0):
            raise ValueError("universe element values must be non-negative")
        self.m = len(self.values)
        self.subsets = _index_lists(subsets, self.m, "subset")

    @property
    def n(self) -> int:
        return len(self.subsets)

    def empty_state(self, weights: np.ndarray) -> _CovState:
        return _CovState(weights, self)


# ---------------------------------------------------------------------------
# facility location
# ---------------------------------------------------------------------------


class _LocState(EvalState):
    __slots__ = ("benefit", "best")

    def __init__(self, weights: np.ndarray, benefit: np.ndarray) -> None:
        super().__init__(weights)
        self.benefit = benefit
        self.best = np.zeros(benefit.shape[1])

    def _gain(self, c: int) -> float:
        diff = self.benefit[c] - self.best
        return float(diff[diff > 0.0].sum())

    def _copy(self) -> "_LocState":
        new = object.__new__(_LocState)
        new.benefit = self.benefit
        new.best = self.best.copy()
        return new

    def _apply(self, c: int) -> float:
        row = self.benefit[c]
        diff = row - self.best
        mask = diff > 0.0
        g = float(diff[mask].sum())
        self.best[mask] = row[mask]
        return g


class FacilityOracle(ValueOracle):
    """f(X) = sum over customers of the best benefit among chosen locations.

    With no location chosen a customer contributes 0, so benefits must be
    non-negative for monotonicity/normalization to hold.
    """

    def __init__(self, benefit: np.ndarray) -> None:
        self.benefit = np.asarray(benefit, dtype=float)
        if self.benefit.ndim != 2:
            raise ValueError("benefit must be an (n, m) matrix")
        if np.any(self.benefit < 0):
            raise ValueError("benefits must be non-negative")

    @property
    def n(self) -> int:
        return self.benefit.shape[0]

    @property
    def m(self) -> int:
        return self.benefit.shape[1]

    def empty_state(self, weights: np.ndarray) -> _LocState:
        return _LocState(weights, self.benefit)


# ---------------------------------------------------------------------------
# bipartite influence
# ---------------------------------------------------------------------------


class _InfState(EvalState):
    __slots__ = ("oracle", "survival")

    def __init__(self, weights: np.ndarray, oracle: "InfluenceOracle") -> None:
        super().__init__(weights)
        self.oracle = oracle
        self.survival = np.ones(oracle.m)

    def _gain(self, c: int) -> float:
        # Activating c flips each arc-neighbour j from survival s_j to
        # s_j * (1 - p_c); expected activation rises by p_c * sum of s_j.
        targets = self.oracle.arcs[c]
        if not len(targets):
            return 0.0
        return float(self.oracle.probs[c] * self.survival[targets].sum())

    def _copy(self) -> "_InfState":
        new = object.__new__(_InfState)
        new.oracle = self.oracle
        new.survival = self.survival.copy()
        return new

    def _apply(self, c: int) -> float:
        targets = self.oracle.arcs[c]
        if not len(targets):
            return 0.0
        p = self.oracle.probs[c]
        s = self.survival[targets]
        self.survival[targets] = s * (1.0 - p)
        return float(p * s.sum())


class InfluenceOracle(ValueOracle):
    """Expected number of activated targets in a bipartite independent cascade."""

    def __init__(self, arcs: Sequence[Sequence[int]], probs: Sequence[float], m: int) -> None:
        self.probs = np.asarray(probs, dtype=float)
        if np.any((self.probs < 0) | (self.probs > 1)):
            raise ValueError("activation probabilities must lie in [0, 1]")
        if len(arcs) != len(self.probs):
            raise ValueError("arcs and probs must have one entry per source")
        self.m = int(m)
        self.arcs = _index_lists(arcs, self.m, "source")

    @property
    def n(self) -> int:
        return len(self.probs)

    def empty_state(self, weights: np.ndarray) -> _InfState:
        return _InfState(weights, self)
