"""Best-first baselines: a max-priority frontier ordered by f(S) + u(S).

Two continuation heuristics are reconstructed:

* ``umod`` — the modular LP bound: the fractional-knapsack optimum over the
  node's candidate gains with the node's residual capacity.  This is exactly
  the fractional bound of the depth-first solvers, so it is admissible.
* ``udom`` — a tighter chain heuristic: run the ratio greedy from the node,
  recording at each step i the modular bound u_mod(X_{1:i}) over the
  still-unpicked candidates (capacity stays B - w(S), as in the source
  material; ``tight_chain_capacity=True`` shrinks it to B - w(S u X) for
  comparison).  With beta_i = 1 - gain_i / u_mod(X_{1:i-1}), the heuristic is
  f(X_{1:k} | S) / (1 - prod beta_i), collapsing to u_mod when k=1.

Exactness never rests on udom: every frontier entry also carries the
admissible bound f(S) + u_mod(S), and entries are discarded on pop when that
bound cannot beat the incumbent.  For umod, priority and bound coincide, so
the solver may stop as soon as the top of the heap is hopeless; for udom the
frontier is drained (each hopeless pop is O(1)).

Frontier entries are popped by priority, ties broken by lower depth, then by
the lexicographically smallest member tuple — fully deterministic.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from math import inf

import numpy as np

from .bounds import fractional_knapsack, greedy_order
from .model import EvalState, Instance
from .solver import SolveReport, Status

__all__ = ["u_mod", "UdomTrace", "greedy_udom", "u_dom", "best_first_solve"]

FRONTIER_CAP_DEFAULT = 50_000_000


def u_mod(gains: np.ndarray, weights: np.ndarray, capacity: float) -> float:
    """Modular continuation bound: LP optimum over the given gain table.

    Unlike the bounds-module primitives this sorts internally, because the
    chain heuristic calls it with freshly queried (unordered) gains.
    """
    gains = np.asarray(gains, dtype=float)
    weights = np.asarray(weights, dtype=float)
    order = np.lexsort((np.arange(len(gains)), -(gains / weights)))
    return fractional_knapsack(gains[order], weights[order], capacity).value


@dataclass(frozen=True)
class UdomTrace:
    """Everything the chain produced, for the heuristic and for tests.

    chain/chain_gains: picked elements and their marginal gains, in pick
    order.  umods[i] = u_mod(X_{1:i}); always k+1 entries (the final one is
    evaluated when the chain stops, 0.0 if no candidate remained).  c_max is
    the best singleton gain's element (None when there were no candidates).
    evals = marginal-gain queries + extensions spent building the trace.
    """

    chain: tuple[int, ...]
    chain_gains: tuple[float, ...]
    umods: tuple[float, ...]
    c_max: int | None
    evals: int

    @property
    def k(self) -> int:
        return len(self.chain)


def greedy_udom(
    state: EvalState,
    candidates: np.ndarray,
    weights: np.ndarray,
    budget: float,
    tight_chain_capacity: bool = False,
) -> UdomTrace:
    """Ratio-greedy chain from the node S held by ``state``.

    Selection recomputes every remaining candidate's gain each step (one
    batch of queries per step, shared with the u_mod evaluation).  The chain
    stops at the first selected element that no longer fits — remaining
    candidates are *not* tried, matching the source construction.
    """
    cands = np.asarray(candidates, dtype=np.int64)
    cap_total = budget - state.weight
    chain: list[int] = []
    chain_gains: list[float] = []
    umods: list[float] = []
    c_max: int | None = None
    evals = 0
    st = state
    used = 0.0
    while True:
        if not len(cands):
            umods.append(0.0)
            break
        gains = np.array([st.gain(int(c)) for c in cands])
        evals += len(cands)
        w = weights[cands]
        cap_lp = (cap_total - used) if tight_chain_capacity else cap_total
        umods.append(u_mod(gains, w, max(cap_lp, 0.0)))
        order = greedy_order(gains, w, cands)
        pick = order[0]
        if c_max is None:
            # best singleton gain, ties to the lower id (first occurrence)
            c_max = int(cands[int(np.argmax(gains))])
        if used + w[pick] > cap_total:
            break
        chain.append(int(cands[pick]))
        chain_gains.append(float(gains[pick]))
        used += float(w[pick])
        st = st.extend(int(cands[pick]))
        evals += 1
        cands = np.delete(cands, pick)
    return UdomTrace(tuple(chain), tuple(chain_gains), tuple(umods), c_max, evals)


def u_dom(trace: UdomTrace) -> float:
    """Chain heuristic value from a trace (see module docstring).

    Guards: any zero u_mod along the chain sends the beta product to zero
    (heuristic = the chain's own gain, which is then provably the best
    continuation); an empty or all-zero-gain chain degenerates to u_mod(S).
    """
    k = trace.k
    f_chain = float(sum(trace.chain_gains))
    if k == 0:
        return float(trace.umods[0])
    if any(v == 0.0 for v in trace.umods):
        return f_chain
    beta = 1.0
    for g, um in zip(trace.chain_gains, trace.umods):
        beta *= 1.0 - g / um
    denom = 1.0 - beta
    if denom <= 0.0:
        return float(trace.umods[0])
    return f_chain / denom


class _Entry:
    __slots__ = ("state", "elems", "w", "gains", "bound")

    def __init__(self, state, elems, w, gains, bound):
        self.state = state
        self.elems = elems  # candidates, greedy-ordered w.r.t. this node
        self.w = w
        self.gains = gains
        self.bound = bound  # f(S) + u_mod(S): the admissible discard bound


def best_first_solve(
    instance: Instance,
    heuristic: str = "umod",
    time_limit: float = 3600.0,
    frontier_cap: int = FRONTIER_CAP_DEFAULT,
    tight_chain_capacity: bool = False,
    prune_eps: float = 1e-9,
) -> SolveReport:
    """Exact best-first search; ``heuristic`` is "umod" or "udom"."""
    if heuristic not in ("umod", "udom"):
        raise ValueError(f"unknown heuristic {heuristic!r}")
    use_dom = heuristic == "udom"
    weights = instance.weights
    budget = float(instance.budget)
    t0 = time.perf_counter()
    deadline = t0 + time_limit

    nodes = 0
    evals = 0
    best_val = -inf
    best_set: tuple[int, ...] = ()
    status = Status.OPTIMAL
    heap: list = []
    counter = 0  # untouched by ties (member tuples are unique); kept for safety

    def make_entry(state: EvalState, members: tuple[int, ...], cand: np.ndarray):
        """Order candidates, compute u and push.  Returns False on cap hit."""
        nonlocal evals, counter
        w = weights[cand]
        if len(cand):
            gains = np.array([state.gain(int(c)) for c in cand])
            evals += len(cand)
            order = greedy_order(gains, w, cand)
            cand, w, gains = cand[order], w[order], gains[order]
            lp = fractional_knapsack(gains, w, budget - state.weight).value
        else:
            gains = np.zeros(0)
            lp = 0.0
        bound = state.value + lp
        if use_dom:
            trace = greedy_udom(state, cand, weights, budget, tight_chain_capacity)
            evals += trace.evals
            priority = state.value + u_dom(trace)
        else:
            priority = bound
        counter += 1
        heapq.heappush(
            heap,
            (-priority, len(members), members, counter, _Entry(state, cand, w, gains, bound)),
        )
        return len(heap) <= frontier_cap

    root_cand = np.arange(instance.n, dtype=np.int64)
    root_cand = root_cand[weights[root_cand] <= budget]
    if not make_entry(instance.root_state(), (), root_cand):
        status = Status.MEMORY

    while heap and status is Status.OPTIMAL:
        if time.perf_counter() > deadline:
            status = Status.TIMEOUT
            break
        neg_priority, _depth, members, _cnt, entry = heapq.heappop(heap)
        nodes += 1
        if entry.state.value > best_val:
            best_val = entry.state.value
            best_set = tuple(sorted(members))
        if entry.bound <= best_val + prune_eps:
            if not use_dom:
                break  # heap is priority==bound ordered: nothing left can win
            continue
        elems = entry.elems
        for i in range(len(elems)):
            c = int(elems[i])
            child_state = entry.state.extend(c)
            evals += 1
            suffix = elems[i + 1 :]
            fits = child_state.weight + entry.w[i + 1 :] <= budget
            child_cand = suffix[fits]
            if not make_entry(child_state, members + (c,), child_cand):
                status = Status.MEMORY
                break

    if best_val < 0.0:
        best_val, best_set = 0.0, ()
    return SolveReport(
        status=status,
        best_value=float(best_val),
        best_set=best_set,
        nodes=nodes,
        evals=evals,
        wall_time=time.perf_counter() - t0,
        solver=heuristic,
    )
