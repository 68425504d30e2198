"""Shared test plumbing: small random instances and sampled search contexts."""

from __future__ import annotations

import numpy as np

from subknap.benchmarks.generate import GenParams, generate
from subknap.model import EvalState, Instance

PROBLEMS = ("cov", "loc", "inf")
METHODOLOGIES = ("sakaue", "ours")


def small_instance(
    rng: np.random.Generator,
    problem: str | None = None,
    methodology: str | None = None,
    n_lo: int = 5,
    n_hi: int = 13,
    m_lo: int = 4,
    m_hi: int = 16,
    budget_mode: str | None = None,
) -> Instance:
    """Random small instance with a mixed budget regime.

    budget_mode: "degenerate" (below the cheapest element), "tight" (a few
    elements fit), "roomy" (most fit), or None for a random pick among them
    plus the methodology default.
    """
    problem = problem or PROBLEMS[int(rng.integers(len(PROBLEMS)))]
    methodology = methodology or METHODOLOGIES[int(rng.integers(len(METHODOLOGIES)))]
    n = int(rng.integers(n_lo, n_hi + 1))
    m = int(rng.integers(m_lo, m_hi + 1))
    seed = int(rng.integers(0, 2**63))
    base = GenParams.defaults(problem, methodology, seed=seed, n=n, m=m)
    probe = generate(base)  # only to look at the weights
    w = probe.weights
    mode = budget_mode or ["degenerate", "tight", "roomy", "default"][int(rng.integers(4))]
    if mode == "degenerate":
        budget = float(w.min()) * float(rng.uniform(0.1, 0.95))
    elif mode == "tight":
        k = max(1, n // 3)
        budget = float(np.sort(w)[:k].sum()) * float(rng.uniform(0.8, 1.2))
    elif mode == "roomy":
        budget = float(w.sum()) * float(rng.uniform(0.5, 0.9))
    else:
        budget = base.budget
    params = GenParams.defaults(problem, methodology, seed=seed, n=n, m=m, budget=budget)
    return generate(params)


def random_feasible_state(
    inst: Instance, rng: np.random.Generator
) -> tuple[EvalState, list[int]]:
    """(state for a random feasible S, the members of S)."""
    state = inst.root_state()
    order = rng.permutation(inst.n)
    members: list[int] = []
    stop = rng.random()  # vary |S|: sometimes empty, sometimes near-full
    for c in order:
        if rng.random() > stop:
            continue
        if state.weight + inst.weights[c] <= inst.budget:
            state = state.extend(int(c))
            members.append(int(c))
    return state, sorted(members)


def sample_context(
    inst: Instance, rng: np.random.Generator, max_candidates: int = 14
) -> tuple[EvalState, np.ndarray]:
    """A (state, candidate array) pair like a search node would see.

    S is a random feasible set; candidates are a random subset of its
    complement, capped so that brute-forcing the context stays cheap.
    """
    state, members = random_feasible_state(inst, rng)
    complement = np.array([c for c in range(inst.n) if c not in set(members)], dtype=np.int64)
    if len(complement) > max_candidates:
        complement = rng.choice(complement, size=max_candidates, replace=False)
    keep = rng.random(len(complement)) < 0.85
    cand = np.sort(complement[keep])
    return state, cand
