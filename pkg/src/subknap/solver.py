"""Depth-first branch-and-bound over the basic search tree, in six variants.

The tree: a node is a feasible set S with an ordered candidate list C(S);
the i-th child extends S by the i-th candidate and inherits the candidate
suffix after position i.  Every variant shares one iterative skeleton
(explicit stack, one incumbent, cooperative time-limit checks) and differs
only in how a freshly reached node is *prepared*: which upper bound gates it,
how its candidates are ordered, and which children are branched.

    basic   exact gains, ratio order, fractional-knapsack bound
    basic+  like basic but gated by the exact 0/1 knapsack bound
    le      lazily refreshed gain upper bounds; bound and order use them
    ep      like basic, but gains are computed one at a time in the parent's
            order so hopeless nodes are pruned before the ordering completes
    cr      like basic, plus per-child reduction flags, re-derived whenever
            the incumbent improves, that prune single children (flags are
            inherited by descendants)
    lecr    le and cr combined: reduction tests run on the lazy gains

Node count = number of prepared (= search-function-invoked) nodes; eval
count = marginal-gain queries + state extensions.  Both are deterministic
for a given instance and configuration.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from math import inf

import numpy as np

from .bounds import (
    exact_knapsack,
    forced_completion_values,
    fractional_knapsack,
    greedy_order,
)
from .model import Instance

__all__ = [
    "Variant",
    "Status",
    "SolverConfig",
    "SolveReport",
    "AuditLog",
    "solve",
    "ratio_greedy",
]


class Variant(str, Enum):
    BASIC = "basic"
    BASIC_PLUS = "basic+"
    LAZY = "le"
    EARLY_PRUNING = "ep"
    REDUCTION = "cr"
    LAZY_REDUCTION = "lecr"


class Status(str, Enum):
    OPTIMAL = "optimal"
    TIMEOUT = "timeout"
    MEMORY = "memory"


@dataclass(frozen=True)
class SolverConfig:
    variant: Variant = Variant.BASIC
    time_limit: float = 3600.0
    prune_eps: float = 1e-9  # bound <= incumbent + eps  =>  prune
    node_limit: int | None = None
    # Candidates that cannot fit are dropped when a node is constructed.  Turn
    # off to keep them in the candidate lists (they are then skipped at
    # branch time only), reproducing the bounds of the unfiltered tree.
    filter_infeasible: bool = True
    audit: bool = False  # record prune/reduction events (tests; small trees only)

    def __post_init__(self) -> None:
        # accept the plain string names ("basic+", "le", ...) everywhere
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class AuditLog:
    """Per-event records for soundness checks.  Only for small instances."""

    expanded: list[tuple[int, ...]] = field(default_factory=list)
    # (kind, node set, candidate elements at the node, incumbent at test time)
    prunes: list[tuple[str, tuple[int, ...], tuple[int, ...], float]] = field(
        default_factory=list
    )
    # (node set, flagged element, candidate elements, incumbent at flag time)
    reductions: list[tuple[tuple[int, ...], int, tuple[int, ...], float]] = field(
        default_factory=list
    )
    # (node set, candidate elements, lazy gain values) for scheme validation
    lazy_nodes: list[tuple[tuple[int, ...], tuple[int, ...], tuple[float, ...]]] = field(
        default_factory=list
    )


@dataclass
class SolveReport:
    status: Status
    best_value: float
    best_set: tuple[int, ...]
    nodes: int
    evals: int
    wall_time: float
    solver: str
    first_leaf: tuple[int, ...] | None = None
    audit: AuditLog | None = None


class _Frame:
    __slots__ = (
        "state", "members", "elems", "w", "gains", "reduced", "pos", "kids", "flag_inc",
    )

    def __init__(self, state, members, elems, w, gains, reduced):
        self.state = state
        self.members = members  # tuple, insertion order
        self.elems = elems  # np.int64, node order once prepared
        self.w = w  # weights[elems]
        self.gains = gains  # on push: parent-basis gains (None at root)
        self.reduced = reduced  # bool mask (cr / lecr), parent flags on push
        self.pos = -1  # -1 = not prepared yet; else next branch position
        self.kids = 0
        self.flag_inc = inf  # incumbent value at the last reduction pass


def solve(instance: Instance, config: SolverConfig | None = None, **kw) -> SolveReport:
    """Run one solver variant to optimality (or until a limit trips).

    Keyword arguments are shorthand for SolverConfig fields, e.g.
    ``solve(inst, variant=Variant.LAZY, time_limit=60)``.
    """
    if config is None:
        config = SolverConfig(**kw)
    elif kw:
        raise TypeError("pass either a config or keyword fields, not both")
    return _Search(instance, config).run()


class _Search:
    def __init__(self, instance: Instance, config: SolverConfig):
        self.inst = instance
        self.cfg = config
        self.weights = instance.weights
        self.budget = float(instance.budget)
        self.eps = config.prune_eps
        self.lazy = config.variant in (Variant.LAZY, Variant.LAZY_REDUCTION)
        self.reducing = config.variant in (Variant.REDUCTION, Variant.LAZY_REDUCTION)
        self.nodes = 0
        self.evals = 0
        self.best_val = -inf
        self.best_set: tuple[int, ...] = ()
        self.first_leaf: tuple[int, ...] | None = None
        self.audit = AuditLog() if config.audit else None

    # -- skeleton ---------------------------------------------------------------

    def run(self) -> SolveReport:
        t0 = time.perf_counter()
        deadline = t0 + self.cfg.time_limit
        status = Status.OPTIMAL

        elems = np.arange(self.inst.n, dtype=np.int64)
        w = self.weights[elems]
        if self.cfg.filter_infeasible:
            fits = w <= self.budget
            elems, w = elems[fits], w[fits]
        reduced = np.zeros(len(elems), dtype=bool) if self.reducing else None
        root = _Frame(self.inst.root_state(), (), elems, w, None, reduced)
        stack = [root]

        while stack:
            fr = stack[-1]
            if fr.pos < 0:
                # fresh node: this is one search-function invocation
                if time.perf_counter() > deadline or (
                    self.cfg.node_limit is not None and self.nodes >= self.cfg.node_limit
                ):
                    status = Status.TIMEOUT
                    break
                self.nodes += 1
                if self.audit is not None:
                    self.audit.expanded.append(tuple(sorted(fr.members)))
                value = fr.state.value
                if value > self.best_val:
                    self.best_val = value
                    self.best_set = tuple(sorted(fr.members))
                if len(fr.elems) == 0 or not self._prepare(fr):
                    self._pop_leafcheck(stack)
                    continue
                fr.pos = 0
                fr.flag_inc = self.best_val
            child = self._next_child(fr)
            if child is None:
                self._pop_leafcheck(stack)
            else:
                fr.kids += 1
                stack.append(child)

        wall = time.perf_counter() - t0
        if self.best_val < 0.0:  # the root always sets it to f(empty) = 0 unless
            self.best_val = 0.0  # the time limit tripped before the first node
            self.best_set = ()
        return SolveReport(
            status=status,
            best_value=float(self.best_val),
            best_set=self.best_set,
            nodes=self.nodes,
            evals=self.evals,
            wall_time=wall,
            solver=self.cfg.variant.value,
            first_leaf=self.first_leaf,
            audit=self.audit,
        )

    def _pop_leafcheck(self, stack: list[_Frame]) -> None:
        fr = stack.pop()
        if fr.kids == 0 and self.first_leaf is None:
            # first dead end of the depth-first walk == greedy chain endpoint
            self.first_leaf = tuple(sorted(fr.members))

    def _next_child(self, fr: _Frame) -> "_Frame | None":
        k = len(fr.elems)
        budget = self.budget
        node_w = fr.state.weight
        filter_on = self.cfg.filter_infeasible
        if fr.reduced is not None and fr.members and self.best_val > fr.flag_inc:
            # the incumbent improved since the last pass over this node, so
            # the reduction test can newly flag children (never at the root)
            self._reduce(fr, fr.gains, budget - node_w)
            fr.flag_inc = self.best_val
        while fr.pos < k:
            i = fr.pos
            fr.pos = i + 1
            if fr.reduced is not None and fr.reduced[i]:
                continue
            wc = fr.w[i]
            if node_w + wc > budget:  # only reachable with filtering off
                continue
            c = int(fr.elems[i])
            state = fr.state.extend(c)
            self.evals += 1
            elems = fr.elems[i + 1 :]
            w = fr.w[i + 1 :]
            gains = fr.gains[i + 1 :]
            reduced = fr.reduced[i + 1 :] if fr.reduced is not None else None
            if filter_on and len(elems):
                fits = state.weight + w <= budget
                if not fits.all():
                    elems, w, gains = elems[fits], w[fits], gains[fits]
                    if reduced is not None:
                        reduced = reduced[fits]
            return _Frame(state, fr.members + (c,), elems, w, gains, reduced)
        return None

    # -- node preparation (the variant-specific part) ---------------------------

    def _prepare(self, fr: _Frame) -> bool:
        """Bound, order and (for cr/lecr) flag the node.  False = pruned."""
        variant = self.cfg.variant
        if self.lazy:
            return self._prepare_lazy(fr)
        if variant is Variant.EARLY_PRUNING and fr.gains is not None:
            return self._prepare_early(fr)
        return self._prepare_eager(fr)

    def _exact_gains(self, fr: _Frame) -> np.ndarray:
        state_gain = fr.state.gain
        out = np.empty(len(fr.elems))
        for idx, c in enumerate(fr.elems.tolist()):
            out[idx] = state_gain(c)
        self.evals += len(out)
        return out

    def _prune_event(self, kind: str, fr: _Frame) -> None:
        if self.audit is not None:
            self.audit.prunes.append(
                (kind, tuple(sorted(fr.members)), tuple(fr.elems.tolist()), self.best_val)
            )

    def _prepare_eager(self, fr: _Frame) -> bool:
        """basic / basic+ / cr, and ep at the root (no parent order yet)."""
        gains = self._exact_gains(fr)
        order = greedy_order(gains, fr.w, fr.elems)
        fr.elems = fr.elems[order]
        fr.w = fr.w[order]
        fr.gains = gains[order]
        cap = self.budget - fr.state.weight
        if self.cfg.variant is Variant.BASIC_PLUS:
            bound = fr.state.value + exact_knapsack(fr.gains, fr.w, cap)
            if bound <= self.best_val + self.eps:
                self._prune_event("plus", fr)
                return False
            return True
        if fr.reduced is not None:
            fr.reduced = fr.reduced[order]
            live = ~fr.reduced
            lp = fractional_knapsack(fr.gains[live], fr.w[live], cap).value
        else:
            lp = fractional_knapsack(fr.gains, fr.w, cap).value
        if fr.state.value + lp <= self.best_val + self.eps:
            self._prune_event("cr" if fr.reduced is not None else "basic", fr)
            return False
        if fr.reduced is not None and fr.members:  # no reduction at the root
            self._reduce(fr, fr.gains, cap)
        return True

    def _reduce(self, fr: _Frame, gains: np.ndarray, cap: float) -> None:
        """Flag children that provably cannot be part of an improvement.

        Candidate c is reduced when f(S) + f(c|S) plus the fractional optimum
        of the *other* candidates within the capacity left after packing c
        cannot beat the incumbent: every completion through c is bounded by
        exactly that quantity (pack c whole, relax the rest).  Flags are
        sticky: descendants inherit them and never branch flagged elements.
        Uses whatever gain values the node was ordered by (exact for cr, lazy
        upper bounds for lecr — upper bounds only weaken the test, never
        unsoundly).  Runs once after the node's own bound test, then again
        whenever the incumbent has improved since the last pass.
        """
        forced = forced_completion_values(gains, fr.w, cap)
        flags = forced + fr.state.value <= self.best_val + self.eps
        if self.audit is not None:
            fresh = flags & ~fr.reduced
            if fresh.any():
                members = tuple(sorted(fr.members))
                cands = tuple(fr.elems.tolist())
                for c in fr.elems[fresh].tolist():
                    self.audit.reductions.append((members, c, cands, self.best_val))
        fr.reduced |= flags

    def _prepare_lazy(self, fr: _Frame) -> bool:
        """le / lecr: refresh inherited gain bounds, order and bound by them."""
        cap = self.budget - fr.state.weight
        if fr.gains is None:  # root: the scheme starts from exact singletons
            u = self._exact_gains(fr)
        else:
            u = fr.gains.copy()
            if cap > 0.0:
                threshold = (self.best_val - fr.state.value) / cap
                refresh = u / fr.w >= threshold
            else:
                refresh = np.zeros(len(u), dtype=bool)
            idxs = np.flatnonzero(refresh)
            state_gain = fr.state.gain
            for idx in idxs.tolist():
                u[idx] = state_gain(int(fr.elems[idx]))
            self.evals += len(idxs)
        order = greedy_order(u, fr.w, fr.elems)
        fr.elems = fr.elems[order]
        fr.w = fr.w[order]
        fr.gains = u[order]
        if self.audit is not None:
            self.audit.lazy_nodes.append(
                (
                    tuple(sorted(fr.members)),
                    tuple(fr.elems.tolist()),
                    tuple(fr.gains.tolist()),
                )
            )
        if fr.reduced is not None:
            fr.reduced = fr.reduced[order]
            live = ~fr.reduced
            lp = fractional_knapsack(fr.gains[live], fr.w[live], cap).value
        else:
            lp = fractional_knapsack(fr.gains, fr.w, cap).value
        if fr.state.value + lp <= self.best_val + self.eps:
            self._prune_event("lazy", fr)
            return False
        if fr.reduced is not None and fr.members:
            self._reduce(fr, fr.gains, cap)
        return True

    def _prepare_early(self, fr: _Frame) -> bool:
        """ep at non-root nodes: interleave gain queries with prune checks.

        Candidates arrive in the parent's greedy order, i.e. sorted by
        non-increasing f(c|S^P)/w_c, so the maximum parent ratio over the
        not-yet-processed remainder is just the next entry.  After each exact
        gain the processed prefix U is kept ratio-ordered; once (a) U alone
        could exhaust the residual capacity and (b) the critical ratio inside
        U dominates every unprocessed parent ratio, the fractional optimum
        over U equals the one over all of C(S), so the node can be bounded
        now: either pruned, or certified unprunable (then the scan just
        finishes the ordering without further checks).
        """
        state = fr.state
        state_gain = state.gain
        cap = self.budget - state.weight
        parent_gains = fr.gains
        elems = fr.elems.tolist()
        wlist = fr.w.tolist()
        k = len(elems)

        skeys: list[tuple[float, int]] = []  # (-ratio, element) insertion keys
        sel: list[int] = []  # elements, ratio-ordered
        sg: list[float] = []
        sw: list[float] = []

        def insert(c: int, g: float, wc: float) -> None:
            key = (-g / wc, c)
            lo = bisect_left(skeys, key)
            skeys.insert(lo, key)
            sel.insert(lo, c)
            sg.insert(lo, g)
            sw.insert(lo, wc)

        w_seen = 0.0
        decided = False
        for i in range(k):
            g = state_gain(elems[i])
            self.evals += 1
            insert(elems[i], g, wlist[i])
            w_seen += wlist[i]
            if w_seen < cap:
                continue
            # condition (a) holds; find the critical index j* of the prefix
            acc = 0.0
            jstar = 0
            for j, wj in enumerate(sw):
                acc += wj
                if acc >= cap:
                    jstar = j
                    break
            next_ratio = (
                parent_gains[i + 1] / wlist[i + 1] if i + 1 < k else -inf
            )
            if -skeys[jstar][0] < next_ratio:
                continue  # condition (b) fails; keep scanning
            # decision point: fractional optimum over U == over C(S)
            lp = sum(sg[:jstar]) + sg[jstar] * ((cap - (acc - sw[jstar])) / sw[jstar])
            if state.value + lp <= self.best_val + self.eps:
                self._prune_event("ep", fr)
                return False
            # no-pruning certificate: finish the ordering, skip further checks
            for rest in range(i + 1, k):
                g = state_gain(elems[rest])
                insert(elems[rest], g, wlist[rest])
            self.evals += k - (i + 1)
            decided = True
            break
        if not decided and w_seen < cap:
            # every candidate fits whole; the scan conditions can never fire,
            # so fall back to the plain bound (all gains are already in hand)
            if state.value + sum(sg) <= self.best_val + self.eps:
                self._prune_event("basic", fr)
                return False
        fr.elems = np.asarray(sel, dtype=np.int64)
        fr.w = np.asarray(sw)
        fr.gains = np.asarray(sg)
        return True


# ---------------------------------------------------------------------------


def ratio_greedy(instance: Instance, prune_eps: float = 1e-9) -> tuple[float, tuple[int, ...]]:
    """Cheapest-bang greedy: repeatedly pack the best gain/weight candidate.

    Mirrors the first depth-first descent of the basic search: candidates
    that no longer fit are discarded, gains are recomputed after every pack,
    ties break toward the lower element id, and the walk stops once the
    remaining candidates cannot improve the value (zero-gain packs are value
    neutral, and the search prunes them as non-improving).
    """
    state = instance.root_state()
    weights = instance.weights
    budget = instance.budget
    cands = np.arange(instance.n, dtype=np.int64)
    while True:
        fits = state.weight + weights[cands] <= budget
        cands = cands[fits]
        if not len(cands):
            break
        gains = np.array([state.gain(int(c)) for c in cands])
        w = weights[cands]
        order = greedy_order(gains, w, cands)
        lp = fractional_knapsack(gains[order], w[order], budget - state.weight).value
        if lp <= prune_eps:
            break
        state = state.extend(int(cands[order[0]]))
        cands = cands[order[1:]]
    return float(state.value), state.set_tuple()
