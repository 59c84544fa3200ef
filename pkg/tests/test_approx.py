from hypothesis import given, settings

from helpers import ast_strategy, d1, db_strategy
from rpq.approx import compute_approximation, enum_approx
from rpq.evaluation import oracle_eval
from rpq.families import sparse_random
from rpq.graph import GraphDatabase


def test_d1_single_letter_is_forced():
    assert set(compute_approximation(d1(), "a")) == {(1, 2), (2, 3)}
    assert sorted(enum_approx(d1(), "a")) == [(1, 2), (2, 3)]


def test_empty_results():
    assert compute_approximation(d1(), "c") == []
    assert list(enum_approx(GraphDatabase("a"), "a")) == []


def test_complete_graph_coverage():
    d = GraphDatabase("a", [1, 2, 3], [(u, "a", v) for u in (1, 2, 3) for v in (1, 2, 3) if u != v])
    approx = compute_approximation(d, "a")
    assert len(approx) <= 6
    assert {u for u, _ in approx} == {v for _, v in approx} == {1, 2, 3}


def test_star_query_covers_every_node():
    got = list(enum_approx(d1(), "a*"))
    assert {u for u, _ in got} == {v for _, v in got} == {1, 2, 3}


@settings(max_examples=150, deadline=None)
@given(db_strategy(alphabet="abc", max_nodes=8, max_arcs=20), ast_strategy("abc"))
def test_sound_and_covering(d, ast):
    exact = set(oracle_eval(d, ast))
    approx = list(enum_approx(d, ast))
    assert len(approx) == len(set(approx))
    assert set(approx) <= exact
    assert {u for u, _ in approx} == {u for u, _ in exact}
    assert {v for _, v in approx} == {v for _, v in exact}
    assert len(approx) <= 2 * len(d)


def test_gap_is_constant():
    gaps = []
    for n in (50, 200):
        e = enum_approx(sparse_random(n, seed=n), "(a|b)+")
        list(e)
        gaps.append(e.meter.max_gap)
    assert max(gaps) <= 2
