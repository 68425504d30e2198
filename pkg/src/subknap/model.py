"""Core problem model: instances, value oracles, incremental evaluation states.

An instance of budget-constrained monotone submodular maximization is a tuple
(weights, budget, oracle): positive element weights w_i, a budget B, and a set
function f that is normalized (f of the empty set is 0), monotone and
submodular.  The solvers in this package never see f directly; they talk to an
:class:`EvalState`, an immutable snapshot pinned to one set S that answers
marginal-gain queries f(c | S) and produces extended snapshots for S + {c}.
Snapshots are copy-on-extend so that sibling branches of a search tree never
share mutable data.

Elements are 0-based integers.  A set of elements is canonically represented
as a sorted tuple of ints (see :func:`canonical_set`).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "GainEntry",
    "EvalState",
    "ValueOracle",
    "Instance",
    "ModularOracle",
    "TableOracle",
    "canonical_set",
    "weight_of",
]


def canonical_set(elements: Iterable[int]) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple form of an element set."""
    out = tuple(sorted(set(int(e) for e in elements)))
    return out


class GainEntry(NamedTuple):
    """One candidate in a gain table: element id, gain, weight and gain/weight."""

    element: int
    gain: float
    weight: float
    ratio: float


class EvalState(ABC):
    """Evaluation snapshot for a fixed set S.

    Concrete oracles subclass this and keep whatever incremental payload lets
    them answer ``gain`` in better-than-scratch time.  The base class owns the
    bookkeeping every solver needs: current value f(S), current weight w(S)
    and the member set (used to enforce the c not-in S contract).
    """

    __slots__ = ("value", "weight", "members", "_weights")

    def __init__(self, weights: np.ndarray) -> None:
        self.value: float = 0.0
        self.weight: float = 0.0
        self.members: frozenset[int] = frozenset()
        self._weights = weights

    # -- oracle-specific parts -------------------------------------------------

    @abstractmethod
    def _gain(self, c: int) -> float:
        """Marginal gain f(c | S); c is guaranteed not to be in S."""

    @abstractmethod
    def _copy(self) -> "EvalState":
        """Fresh snapshot with copied payload (base fields are filled in by extend)."""

    @abstractmethod
    def _apply(self, c: int) -> float:
        """Mutate the payload to include c and return the marginal gain."""

    # -- public API ------------------------------------------------------------

    def gain(self, c: int) -> float:
        if c in self.members:
            raise ValueError(f"element {c} is already in the set")
        return self._gain(c)

    def extend(self, c: int) -> "EvalState":
        """Snapshot for S + {c}.  The receiver is left untouched."""
        if c in self.members:
            raise ValueError(f"element {c} is already in the set")
        new = self._copy()
        g = new._apply(c)
        new.value = self.value + g
        new.weight = self.weight + float(self._weights[c])
        new.members = self.members | {c}
        new._weights = self._weights
        return new

    def set_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


class ValueOracle(ABC):
    """Set-function oracle.  ``empty_state`` is the only way to start evaluating."""

    @property
    @abstractmethod
    def n(self) -> int:
        """Number of ground-set elements."""

    @abstractmethod
    def empty_state(self, weights: np.ndarray) -> EvalState:
        """Snapshot for the empty set; ``weights`` feeds w(S) bookkeeping."""

    def evaluate(self, elements: Iterable[int], weights: np.ndarray | None = None) -> float:
        """f(X) from scratch, by chained extensions.  O(|X|) oracle work."""
        elems = canonical_set(elements)
        if weights is None:
            weights = np.zeros(self.n)
        state = self.empty_state(weights)
        for c in elems:
            state = state.extend(c)
        return state.value


@dataclass(frozen=True)
class Instance:
    """A knapsack-constrained instance: weights, budget and a value oracle."""

    weights: np.ndarray
    budget: float
    oracle: ValueOracle
    # Optional provenance carried through to run records and instance files.
    problem: str = "custom"
    methodology: str = ""
    seed: int | None = None
    name: str = ""

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 1:
            raise ValueError("weights must be a 1-d array")
        if len(w) != self.oracle.n:
            raise ValueError(
                f"weights has {len(w)} entries but the oracle has n={self.oracle.n}"
            )
        if not np.all(w > 0):
            raise ValueError("all weights must be strictly positive")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def n(self) -> int:
        return len(self.weights)

    def root_state(self) -> EvalState:
        return self.oracle.empty_state(self.weights)

    def weight_of(self, elements: Iterable[int]) -> float:
        return weight_of(self.weights, elements)

    def value_of(self, elements: Iterable[int]) -> float:
        """f(X) evaluated from scratch."""
        return self.oracle.evaluate(elements, self.weights)


def weight_of(weights: np.ndarray, elements: Iterable[int]) -> float:
    """w(X) = sum of element weights; 0.0 for the empty set."""
    idx = list(elements)
    if not idx:
        return 0.0
    return float(np.asarray(weights, dtype=float)[idx].sum())


# ---------------------------------------------------------------------------
# Small oracles used by tests and reference checks.
# ---------------------------------------------------------------------------


class _ModularState(EvalState):
    __slots__ = ("values",)

    def __init__(self, weights: np.ndarray, values: np.ndarray) -> None:
        super().__init__(weights)
        self.values = values

    def _gain(self, c: int) -> float:
        return float(self.values[c])

    def _copy(self) -> "_ModularState":
        new = object.__new__(_ModularState)
        new.values = self.values
        return new

    def _apply(self, c: int) -> float:
        return float(self.values[c])


class ModularOracle(ValueOracle):
    """f(X) = sum of per-element values.  Submodular with equality; no payload."""

    def __init__(self, values: Sequence[float]) -> None:
        self.values = np.asarray(values, dtype=float)
        if np.any(self.values < 0):
            raise ValueError("modular values must be non-negative for monotonicity")

    @property
    def n(self) -> int:
        return len(self.values)

    def empty_state(self, weights: np.ndarray) -> _ModularState:
        return _ModularState(weights, self.values)


class _TableState(EvalState):
    __slots__ = ("table", "mask")

    def __init__(self, weights: np.ndarray, table: np.ndarray) -> None:
        super().__init__(weights)
        self.table = table
        self.mask = 0

    def _gain(self, c: int) -> float:
        return float(self.table[self.mask | (1 << c)] - self.table[self.mask])

    def _copy(self) -> "_TableState":
        new = object.__new__(_TableState)
        new.table = self.table
        new.mask = self.mask
        return new

    def _apply(self, c: int) -> float:
        old = self.table[self.mask]
        self.mask |= 1 << c
        return float(self.table[self.mask] - old)


class TableOracle(ValueOracle):
    """Explicit-table oracle over all 2^n subsets (bitmask-indexed).

    Meant for tests: lets us hand-craft tiny set functions and cross-check the
    incremental oracles.  ``validate=True`` verifies normalization,
    monotonicity and submodularity up front (O(4^n), keep n small).
    """

    def __init__(self, n: int, table: Sequence[float], validate: bool = False) -> None:
        if n > 20:
            raise ValueError("TableOracle is for small n only")
        self.table = np.asarray(table, dtype=float)
        if len(self.table) != 1 << n:
            raise ValueError(f"table must have 2^{n} entries")
        self._n = n
        if validate:
            self._validate()

    @property
    def n(self) -> int:
        return self._n

    def empty_state(self, weights: np.ndarray) -> _TableState:
        return _TableState(weights, self.table)

    def _validate(self) -> None:
        t = self.table
        if t[0] != 0.0:
            raise ValueError("f(empty) must be 0")
        for mask in range(len(t)):
            for c in range(self._n):
                if mask & (1 << c):
                    continue
                gain = t[mask | (1 << c)] - t[mask]
                if gain < -1e-12:
                    raise ValueError(f"not monotone at mask={mask}, c={c}")
                # submodularity: gain at a subset dominates gain at a superset
                for d in range(self._n):
                    bit = 1 << d
                    if d == c or mask & bit:
                        continue
                    wider = t[mask | bit | (1 << c)] - t[mask | bit]
                    if wider > gain + 1e-12:
                        raise ValueError(
                            f"not submodular: c={c}, mask={mask}, extra={d}"
                        )
