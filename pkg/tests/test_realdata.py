"""Real-data loaders on small hand-checked fixtures."""

from __future__ import annotations

import os

import numpy as np
import pytest

from subknap.benchmarks import load_forum_cov, load_movielens_inf
from subknap.benchmarks.realdata import round2

DATA = os.path.join(os.path.dirname(__file__), "data")


def test_round2_half_away_from_zero():
    assert round2(0.125) == 0.13  # banker's round() would give 0.12
    assert round2(-0.125) == -0.13
    assert round2(4.5 / 10.0) == 0.45
    assert round2(100.0 * 2 / 3) == 66.67
    assert round2(0.1) == 0.1


def test_forum_fixture():
    inst = load_forum_cov(os.path.join(DATA, "forum_small.txt"))
    assert inst.problem == "cov" and inst.methodology == "forum"
    assert inst.n == 4 and inst.oracle.m == 3
    assert inst.budget == 2.0
    # topic values = summed row weights
    assert inst.oracle.values.tolist() == [3.0, 4.5, 3.5]
    # cost = round2(100 t / |topics|): users post on 2,1,2,1 of 3 topics
    assert inst.weights.tolist() == [66.67, 33.33, 66.67, 33.33]
    assert [s.tolist() for s in inst.oracle.subsets] == [[0, 1], [1], [1, 2], [0]]
    assert inst.value_of([0, 2]) == pytest.approx(11.0)  # all topics covered
    assert inst.name == "forum_small"


def test_forum_custom_budget_and_gap_detection(tmp_path):
    inst = load_forum_cov(os.path.join(DATA, "forum_small.txt"), budget=70.0)
    assert inst.budget == 70.0
    p = tmp_path / "gap.txt"
    p.write_text("1 1 1.0\n3 1 1.0\n")  # user 2 never posts
    with pytest.raises(ValueError, match="users never posting"):
        load_forum_cov(p)
    q = tmp_path / "gap2.txt"
    q.write_text("1 1 1.0\n1 3 1.0\n")  # topic 2 unused
    with pytest.raises(ValueError, match="topics never posted"):
        load_forum_cov(q)


def test_movielens_fixture():
    inst = load_movielens_inf(os.path.join(DATA, "ratings_small.tsv"))
    assert inst.problem == "inf" and inst.methodology == "movielens"
    assert inst.n == 2 and inst.oracle.m == 3
    assert inst.budget == 7.5
    # movie 1 rated {4, 5} -> p 0.45, movie 2 rated {3, 2, 4} -> p 0.30
    assert inst.oracle.probs.tolist() == [0.45, 0.30]
    assert inst.weights.tolist() == [0.90, 0.60]  # cost = 2p
    assert [a.tolist() for a in inst.oracle.arcs] == [[0, 1], [0, 1, 2]]
    assert inst.value_of([0]) == pytest.approx(0.90)
    # both movies: targets 0,1 survive (1-.45)(1-.30), target 2 only movie 2
    assert inst.value_of([0, 1]) == pytest.approx(2 * (1 - 0.55 * 0.70) + 0.30)


def test_movielens_errors(tmp_path):
    p = tmp_path / "gap.tsv"
    p.write_text("1\t1\t4\t0\n1\t3\t4\t0\n")  # movie 2 never rated
    with pytest.raises(ValueError, match="movies without ratings"):
        load_movielens_inf(p)
    z = tmp_path / "zero.tsv"
    z.write_text("1\t1\t0\t0\n")  # all-zero ratings -> zero cost
    with pytest.raises(ValueError, match="zero cost"):
        load_movielens_inf(z)
    e = tmp_path / "empty.tsv"
    e.write_text("")
    with pytest.raises(ValueError, match="no data rows"):
        load_movielens_inf(e)
    w = tmp_path / "wide.tsv"
    w.write_text("1\t1\t4\n")  # missing timestamp column
    with pytest.raises(ValueError, match="expected 4 columns"):
        load_movielens_inf(w)


def test_comments_and_blank_lines_skipped(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("# header\n\n1 1 2.5\n\n# trailing\n")
    inst = load_forum_cov(p)
    assert inst.n == 1 and inst.oracle.values.tolist() == [2.5]
    assert inst.weights.tolist() == [100.0]
