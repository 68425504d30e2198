"""Loaders that turn two public datasets into benchmark instances.

Forum posts -> weighted coverage.  The input is whitespace-separated triples
``user topic weight`` (1-based ids).  Users are the elements; E_i is the set
of topics user i posted on; a topic's value is the summed weight of all rows
mentioning it.  A user posting on t of the |E| topics costs
round2(100 * t / |E|), budget 2 by default.  (On the genuine forum dump that
is 899 users across 522 topics.)

MovieLens ratings -> bipartite influence.  The input is tab-separated
``user item rating timestamp`` rows (the classic u.data layout).  Movies are
the sources, users the targets; an arc (movie, user) exists when the user
rated the movie.  A movie's activation probability is round2(mean rating /
10) and its cost is 2p, budget 7.5 by default.  (Genuine dump: 1682 movies,
943 users.)

round2 is round-half-away-from-zero to two decimals, applied after the
division, so e.g. mean rating 4.5 gives p = 0.45 and cost 0.90 exactly as
printed.  Every id in 1..max must occur at least once — a movie nobody rated
would get probability NaN and cost 0, so gaps raise instead.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict

import numpy as np

from ..model import Instance
from .oracles import CoverageOracle, InfluenceOracle

__all__ = ["load_forum_cov", "load_movielens_inf", "round2"]


def round2(x: float) -> float:
    """Round half away from zero to 2 decimals (plain round() is banker's)."""
    return math.copysign(math.floor(abs(x) * 100.0 + 0.5) / 100.0, x)


def _read_rows(path: str | os.PathLike, n_cols: int, sep: str | None) -> list[list[str]]:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split(sep)
            if len(parts) < n_cols:
                raise ValueError(
                    f"{path}: line {lineno}: expected {n_cols} columns, got {len(parts)}"
                )
            rows.append(parts[:n_cols])
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def load_forum_cov(path: str | os.PathLike, budget: float = 2.0) -> Instance:
    """Weighted-coverage instance from (user, topic, weight) triples."""
    rows = _read_rows(path, 3, None)
    topic_value: dict[int, float] = defaultdict(float)
    user_topics: dict[int, set[int]] = defaultdict(set)
    for user_s, topic_s, weight_s in rows:
        user, topic, w = int(user_s), int(topic_s), float(weight_s)
        if user < 1 or topic < 1:
            raise ValueError(f"{path}: ids must be 1-based positive integers")
        topic_value[topic] += w
        user_topics[user].add(topic)

    n = max(user_topics)
    m = max(topic_value)
    missing_users = [u for u in range(1, n + 1) if u not in user_topics]
    if missing_users:
        raise ValueError(f"{path}: users never posting: {missing_users[:5]} ...")
    missing_topics = [t for t in range(1, m + 1) if t not in topic_value]
    if missing_topics:
        raise ValueError(f"{path}: topics never posted on: {missing_topics[:5]} ...")

    values = np.array([topic_value[t + 1] for t in range(m)])
    subsets = [sorted(t - 1 for t in user_topics[u + 1]) for u in range(n)]
    weights = np.array([round2(100.0 * len(s) / m) for s in subsets])
    return Instance(
        weights=weights,
        budget=budget,
        oracle=CoverageOracle(subsets, values),
        problem="cov",
        methodology="forum",
        name=os.path.splitext(os.path.basename(os.fspath(path)))[0],
    )


def load_movielens_inf(path: str | os.PathLike, budget: float = 7.5) -> Instance:
    """Bipartite-influence instance from (user, item, rating, timestamp) rows."""
    rows = _read_rows(path, 4, "\t")
    movie_ratings: dict[int, list[float]] = defaultdict(list)
    movie_users: dict[int, set[int]] = defaultdict(set)
    max_user = 0
    for user_s, item_s, rating_s, _ts in rows:
        user, item, rating = int(user_s), int(item_s), float(rating_s)
        if user < 1 or item < 1:
            raise ValueError(f"{path}: ids must be 1-based positive integers")
        movie_ratings[item].append(rating)
        movie_users[item].add(user)
        max_user = max(max_user, user)

    n = max(movie_ratings)
    m = max_user
    missing = [i for i in range(1, n + 1) if i not in movie_ratings]
    if missing:
        raise ValueError(
            f"{path}: movies without ratings (cost would be 0): {missing[:5]} ..."
        )

    probs = np.array(
        [round2(float(np.mean(movie_ratings[i + 1])) / 10.0) for i in range(n)]
    )
    arcs = [sorted(u - 1 for u in movie_users[i + 1]) for i in range(n)]
    weights = 2.0 * probs
    if np.any(weights <= 0):
        zero = [i + 1 for i in range(n) if weights[i] <= 0]
        raise ValueError(f"{path}: movies with zero cost (all-zero ratings): {zero[:5]}")
    return Instance(
        weights=weights,
        budget=budget,
        oracle=InfluenceOracle(arcs, probs, m),
        problem="inf",
        methodology="movielens",
        name=os.path.splitext(os.path.basename(os.fspath(path)))[0],
    )
