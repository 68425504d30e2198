"""
From raw activity logs to solvable instances
============================================

Two loaders turn familiar dataset shapes into instances: forum posting
logs become a coverage problem (pick users, cover topics), and movie
ratings become an influence problem (pick movies, reach raters).  The
snippets below are written inline so the demo is self-contained; point
the loaders at the real files to work at full scale.
"""

import os
import tempfile

from subknap.benchmarks.realdata import load_forum_cov, load_movielens_inf
from subknap.solver import solve

tmp = tempfile.mkdtemp(prefix="subknap_data_")

# --- forum log: "user topic weight" triples ------------------------------
forum_path = os.path.join(tmp, "forum.txt")
with open(forum_path, "w") as fh:
    fh.write(
        "# user topic weight\n"
        "1 1 2.0\n1 2 1.5\n"
        "2 2 2.0\n"
        "3 2 1.0\n3 3 3.5\n"
        "4 1 1.0\n"
    )

# the stock budget (2 points) suits the full dataset's cost scale; with
# four users posting a third of the topics each, allow one expensive pick
forum = load_forum_cov(forum_path, budget=70.0)
print(f"forum: {forum.n} users, {forum.oracle.m} topics, budget {forum.budget}")
print("  user costs:", forum.weights.tolist())  # % of topics posted, in points
print("  topic values:", forum.oracle.values.tolist())

rep = solve(forum, variant="basic")
print(f"  best user set {list(rep.best_set)} covers value {rep.best_value:.2f}")

# --- ratings log: "user  movie  rating  timestamp" ------------------------
ml_path = os.path.join(tmp, "u.data")
rows = [(1, 1, 4), (2, 1, 5), (1, 2, 3), (2, 2, 2), (3, 2, 4)]
with open(ml_path, "w") as fh:
    for user, movie, rating in rows:
        fh.write(f"{user}\t{movie}\t{rating}\t0\n")

movies = load_movielens_inf(ml_path)
print(f"\nmovielens: {movies.n} movies, {movies.oracle.m} raters, budget {movies.budget}")
print("  activation probabilities:", movies.oracle.probs.tolist())
print("  costs (2x probability):", movies.weights.tolist())

rep = solve(movies, variant="lecr")
print(f"  best movie set {list(rep.best_set)} reaches {rep.best_value:.3f} raters")
