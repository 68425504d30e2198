"""Random instance generators for the three benchmark families.

Two parameter methodologies are supported:

* ``sakaue`` — n=100 elements, m=1000 universe/customers/targets, budget 1,
  costs U[0.01, 1]; structure is element-independent (inclusion/arc
  probability 0.3), values/benefits U[0, 1], activation probabilities
  U[0, 1] by default (``low_activation=True`` draws them from U[0, 0.1]
  instead, for the stingier variant).
* ``ours`` — costs U[0.1, 1] and cost-correlated structure: cov n=150/B=5
  with inclusion probability w_i/10, loc n=200/B=6 with benefits U[0, 2 w_i],
  inf n=150/B=5 with arc probability w_i/5.  m=1000 throughout.  Expensive
  elements are deliberately more attractive, which makes the cheap-greedy
  starting incumbent weak and the instances much harder.

Determinism: the seed is split into independent PCG64 streams per field
(0=weights, 1=values, 2=structure) via ``np.random.SeedSequence(seed,
spawn_key=(field,))``, so altering how many numbers one field consumes never
shifts another field's draws.  Equal (params) => identical instance, and
:func:`derived_seed` gives the per-instance seeds used by batch generation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..model import Instance
from .oracles import CoverageOracle, FacilityOracle, InfluenceOracle

__all__ = ["GenParams", "generate", "derived_seed", "PROBLEMS", "METHODOLOGIES"]

PROBLEMS = ("cov", "loc", "inf")
METHODOLOGIES = ("sakaue", "ours")

_DEFAULTS = {
    # (problem, methodology) -> (n, m, budget)
    ("cov", "sakaue"): (100, 1000, 1.0),
    ("loc", "sakaue"): (100, 1000, 1.0),
    ("inf", "sakaue"): (100, 1000, 1.0),
    ("cov", "ours"): (150, 1000, 5.0),
    ("loc", "ours"): (200, 1000, 6.0),
    ("inf", "ours"): (150, 1000, 5.0),
}

_COST_RANGE = {"sakaue": (0.01, 1.0), "ours": (0.1, 1.0)}


@dataclass(frozen=True)
class GenParams:
    """Fully resolved generation parameters for one instance."""

    problem: str
    methodology: str
    seed: int
    n: int
    m: int
    budget: float
    cost_low: float
    cost_high: float
    low_activation: bool = False  # sakaue inf: probabilities from U[0, 0.1]

    @classmethod
    def defaults(
        cls,
        problem: str,
        methodology: str,
        seed: int,
        n: int | None = None,
        m: int | None = None,
        budget: float | None = None,
        low_activation: bool = False,
    ) -> "GenParams":
        if problem not in PROBLEMS:
            raise ValueError(f"unknown problem {problem!r}, expected one of {PROBLEMS}")
        if methodology not in METHODOLOGIES:
            raise ValueError(
                f"unknown methodology {methodology!r}, expected one of {METHODOLOGIES}"
            )
        dn, dm, db = _DEFAULTS[(problem, methodology)]
        lo, hi = _COST_RANGE[methodology]
        return cls(
            problem=problem,
            methodology=methodology,
            seed=int(seed),
            n=n if n is not None else dn,
            m=m if m is not None else dm,
            budget=budget if budget is not None else db,
            cost_low=lo,
            cost_high=hi,
            low_activation=low_activation,
        )

    def with_seed(self, seed: int) -> "GenParams":
        return replace(self, seed=int(seed))


def derived_seed(master_seed: int, index: int) -> int:
    """Per-instance seed for a batch: independent of count, stable across runs."""
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _stream(seed: int, field: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(field),)))
    )


def generate(params: GenParams, name: str = "") -> Instance:
    """Draw one instance.  Same params -> numerically identical instance."""
    p = params
    rng_w = _stream(p.seed, 0)
    rng_v = _stream(p.seed, 1)
    rng_s = _stream(p.seed, 2)

    weights = rng_w.uniform(p.cost_low, p.cost_high, p.n)

    if p.problem == "cov":
        values = rng_v.uniform(0.0, 1.0, p.m)
        if p.methodology == "sakaue":
            incl = np.full(p.n, 0.3)
        else:
            incl = weights / 10.0
        subsets = [np.flatnonzero(rng_s.random(p.m) < incl[i]) for i in range(p.n)]
        oracle = CoverageOracle(subsets, values)
    elif p.problem == "loc":
        base = rng_v.random((p.n, p.m))
        if p.methodology == "sakaue":
            benefit = base
        else:
            benefit = base * (2.0 * weights)[:, None]
        oracle = FacilityOracle(benefit)
    else:  # inf
        top = 0.1 if (p.methodology == "sakaue" and p.low_activation) else 1.0
        probs = rng_v.uniform(0.0, top, p.n)
        if p.methodology == "sakaue":
            arcp = np.full(p.n, 0.3)
        else:
            arcp = weights / 5.0
        arcs = [np.flatnonzero(rng_s.random(p.m) < arcp[i]) for i in range(p.n)]
        oracle = InfluenceOracle(arcs, probs, p.m)

    return Instance(
        weights=weights,
        budget=p.budget,
        oracle=oracle,
        problem=p.problem,
        methodology=p.methodology,
        seed=p.seed,
        name=name or f"{p.problem}-{p.methodology}-{p.seed}",
    )
