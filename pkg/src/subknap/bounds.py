"""Upper bounds on the best feasible completion of a partial solution.

Everything here works on a *gain table*: parallel arrays of non-negative
gains and strictly positive weights for the candidate set J at some node S,
plus the residual capacity B - w(S).  Two bounds are provided:

* the fractional-knapsack (LP) relaxation optimum, computed greedily over the
  ratio order — this is the classic bound from line 4 of the basic search;
* the exact 0/1 knapsack optimum over the same table, a tighter (but much
  more expensive) bound that treats the gains as if they were modular.

Both dominate the true best completion because submodularity caps the joint
gain of any feasible subset by the sum of its per-element gains.  The same LP
applied to any element-wise upper bound on the gains (e.g. lazily inherited
gains) stays valid; see :func:`lazy_fractional_bound`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FractionalResult",
    "fractional_knapsack",
    "fractional_bound",
    "lazy_fractional_bound",
    "exact_knapsack",
    "knapsack_bound",
    "greedy_order",
    "forced_completion_values",
]


def greedy_order(gains: np.ndarray, weights: np.ndarray, elements: np.ndarray) -> np.ndarray:
    """Permutation sorting a gain table by non-increasing gain/weight ratio.

    Ties are broken by ascending element id so that every solver and every
    rerun orders candidates identically.  Zero-gain entries simply sort to the
    tail (ratio 0); they are kept, not dropped.
    """
    ratios = gains / weights
    # np.lexsort: last key is primary.
    return np.lexsort((elements, -ratios))


@dataclass(frozen=True)
class FractionalResult:
    """LP optimum plus the certificate of how the greedy fill ended.

    ``fill_prefix_len`` entries of the (ratio-ordered) input are taken whole;
    if capacity remains and more entries exist, entry ``fractional_index``
    (= fill_prefix_len) is taken at ``fraction`` in (0, 1).  The certificate
    is what lets per-candidate variations of the fill (see
    :func:`forced_completion_values`) be recomputed from prefix sums instead
    of from scratch.
    """

    value: float
    fill_prefix_len: int
    fractional_index: int | None = None
    fraction: float | None = None


def fractional_knapsack(
    gains: np.ndarray, weights: np.ndarray, capacity: float
) -> FractionalResult:
    """LP relaxation optimum of a 0/1 knapsack over a ratio-ordered gain table.

    The caller must pass entries already sorted by non-increasing gain/weight
    (see :func:`greedy_order`); the greedy prefix fill is then optimal for the
    LP.  gains >= 0, weights > 0, capacity >= 0.
    """
    k = len(gains)
    if capacity < 0:
        raise ValueError("negative capacity: node weight exceeds the budget")
    if k == 0 or capacity == 0.0:
        return FractionalResult(0.0, 0)
    cumw = np.cumsum(weights)
    full = int(np.searchsorted(cumw, capacity, side="right"))
    if full >= k:
        return FractionalResult(float(np.sum(gains)), k)
    taken_w = float(cumw[full - 1]) if full else 0.0
    taken_g = float(np.sum(gains[:full])) if full else 0.0
    rem = capacity - taken_w
    if rem <= 0.0:
        return FractionalResult(taken_g, full)
    frac = rem / float(weights[full])
    return FractionalResult(taken_g + frac * float(gains[full]), full, full, frac)


def fractional_bound(
    node_value: float, gains: np.ndarray, weights: np.ndarray, capacity: float
) -> float:
    """f(S) plus the LP optimum over the candidate gain table (ratio-ordered)."""
    return node_value + fractional_knapsack(gains, weights, capacity).value


def lazy_fractional_bound(
    node_value: float, upper_gains: np.ndarray, weights: np.ndarray, capacity: float
) -> float:
    """Same LP, applied to element-wise *upper bounds* on the exact gains.

    Valid whenever upper_gains[c] >= f(c | S) for every candidate, which the
    lazy-evaluation scheme guarantees by construction.  Dominates the exact
    fractional bound, so pruning with it is still safe (just weaker).
    """
    return node_value + fractional_knapsack(upper_gains, weights, capacity).value


def exact_knapsack(gains: np.ndarray, weights: np.ndarray, capacity: float) -> float:
    """Exact 0/1 knapsack optimum over a gain table (any input order).

    Weights are real-valued, so this is a small depth-first branch and bound
    over the ratio order with the LP bound for pruning, not a DP.  Pruning
    compares with plain <=, so the returned value is the exact IP optimum up
    to float arithmetic.
    """
    if capacity < 0:
        raise ValueError("negative capacity")
    gains = np.asarray(gains, dtype=float)
    weights = np.asarray(weights, dtype=float)
    fits = weights <= capacity
    gains, weights = gains[fits], weights[fits]
    keep = gains > 0.0
    gains, weights = gains[keep], weights[keep]
    k = len(gains)
    if k == 0:
        return 0.0
    order = np.lexsort((np.arange(k), -(gains / weights)))
    g = gains[order]
    w = weights[order]
    cumw = np.concatenate(([0.0], np.cumsum(w)))
    cumg = np.concatenate(([0.0], np.cumsum(g)))
    total_w = cumw[-1]

    def suffix_lp(i: int, cap: float) -> float:
        """LP optimum over entries i.. with capacity cap."""
        if cap <= 0.0:
            return 0.0
        if total_w - cumw[i] <= cap:
            return float(cumg[-1] - cumg[i])
        stop = int(np.searchsorted(cumw, cumw[i] + cap, side="right")) - 1
        val = float(cumg[stop] - cumg[i])
        rem = cumw[i] + cap - cumw[stop]
        if stop < k and rem > 0.0:
            val += float(g[stop]) * (rem / float(w[stop]))
        return val

    best = 0.0
    # (index, value so far, remaining capacity); take-branch pushed last => explored first.
    stack = [(0, 0.0, float(capacity))]
    while stack:
        i, val, cap = stack.pop()
        while i < k and w[i] > cap:
            i += 1
        if i >= k:
            if val > best:
                best = val
            continue
        if val + suffix_lp(i, cap) <= best:
            continue
        stack.append((i + 1, val, cap))
        stack.append((i + 1, val + float(g[i]), cap - float(w[i])))
    return best


def knapsack_bound(
    node_value: float, gains: np.ndarray, weights: np.ndarray, capacity: float
) -> float:
    """f(S) plus the exact knapsack optimum over the candidate gain table."""
    return node_value + exact_knapsack(gains, weights, capacity)


def forced_completion_values(
    gains: np.ndarray, weights: np.ndarray, capacity: float
) -> np.ndarray:
    """Per entry j: the LP optimum with x_j = 1 forced, in one vectorized pass.

    Equivalently g_j plus the fractional fill of the *other* entries at the
    residual capacity (capacity - w_j).  Input must be ratio-ordered.  Used by
    candidate reduction: candidate c is provably useless once f(S) plus this
    value drops to the incumbent, because every feasible completion through c
    packs c whole and fills the rest within the leftover budget.

    Entries inside the greedy whole prefix are already taken whole, so forcing
    them changes nothing (their value is the plain LP optimum).  For an entry
    at or past the break, packing it first pushes the break strictly left of
    the entry itself, so one searchsorted over the prefix sums finds the new
    fill with never a need to skip the entry.  An entry heavier than the whole
    capacity gets just its own gain (empty residual fill); callers skip such
    entries at branch time anyway.
    """
    k = len(gains)
    if k == 0:
        return np.zeros(0)
    if capacity < 0:
        raise ValueError("negative capacity")
    cumw = np.cumsum(weights)
    cumg = np.cumsum(gains)
    base = fractional_knapsack(gains, weights, capacity).value
    out = np.full(k, base)
    brk = int(np.searchsorted(cumw, capacity, side="right"))
    if brk >= k:
        return out  # everything fits whole
    j = np.arange(brk, k)
    r = np.maximum(capacity - weights[j], 0.0)
    stops = np.searchsorted(cumw, r, side="right")  # provably < j (or frac 0)
    prev_w = np.where(stops > 0, cumw[np.maximum(stops - 1, 0)], 0.0)
    prev_g = np.where(stops > 0, cumg[np.maximum(stops - 1, 0)], 0.0)
    frac = np.clip((r - prev_w) / weights[stops], 0.0, 1.0)
    out[brk:] = gains[j] + prev_g + frac * gains[stops]
    return out
