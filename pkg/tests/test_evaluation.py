import random

import pytest
from hypothesis import given, settings

from helpers import ast_strategy, d1, db_strategy, random_db
from rpq.errors import AlphabetError
from rpq.graph import GraphDatabase
from rpq.evaluation import (
    boole,
    boole_to_check,
    check,
    check_to_boole,
    count,
    eval_all,
    oracle_eval,
    witness,
)
from rpq.query import parse_rpq


def test_oracle_on_d1():
    assert oracle_eval(d1(), "a+") == [(1, 2), (1, 3), (2, 3)]
    assert oracle_eval(d1(), "%") == [(1, 1), (2, 2), (3, 3)]
    assert oracle_eval(d1(), "ab") == [(1, 3)]


def test_oracle_bound():
    with pytest.raises(ValueError):
        oracle_eval(d1(), "a+", max_nodes=5)


def test_eval_all_examples():
    assert eval_all(d1(), "a+") == [(1, 2), (1, 3), (2, 3)]
    assert eval_all(d1(), "a*") == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    assert eval_all(d1(), "ba") == []


def test_count_examples():
    assert count(d1(), "a+") == 3
    assert count(d1(), "c") == 0
    assert count(d1(), "a*") == 6


def test_boole_and_check_examples():
    assert boole(d1(), "ab")
    assert not boole(d1(), "c")
    assert boole(d1(), "%")
    assert check(d1(), "ab", 1, 3)
    assert not check(d1(), "ab", 1, 2)
    assert check(d1(), "a*", 2, 2)


def test_witness_examples():
    assert witness(d1(), "ab") == (1, 3)
    assert witness(d1(), "c") is None
    assert witness(d1(), "a") in {(1, 2), (2, 3)}


def test_eval_uses_node_order():
    d = GraphDatabase("a", ["z", "y"], [("z", "a", "y"), ("y", "a", "z")])
    assert eval_all(d, "a") == [("z", "y"), ("y", "z")]


@settings(max_examples=150)
@given(db_strategy(alphabet="abc", max_nodes=7, max_arcs=15), ast_strategy("abc"))
def test_eval_matches_oracle(d, ast):
    got = eval_all(d, ast)
    assert got == oracle_eval(d, ast)
    assert count(d, ast) == len(got)
    w = witness(d, ast)
    assert (w is None) == (not got) == (not boole(d, ast))
    if w is not None:
        assert w in got


def test_boole_to_check_examples():
    assert check(*boole_to_check(d1(), "ab"))
    assert not check(*boole_to_check(d1(), "c"))
    assert not check(*boole_to_check(GraphDatabase("a"), "a"))


def test_boole_to_check_shape():
    db, q, u, v = boole_to_check(d1(), "ab")
    assert q == parse_rpq("#(ab)#")
    assert "#" in db.alphabet
    assert {(u, "#", x) for x in d1()} | {(x, "#", v) for x in d1()} <= db.arc_set()


def test_check_to_boole_examples():
    assert boole(*check_to_boole(d1(), "ab", 1, 3))
    assert not boole(*check_to_boole(d1(), "ab", 1, 2))
    assert boole(*check_to_boole(d1(), "%", 2, 2))


def test_marker_must_be_fresh():
    d = GraphDatabase("a#", [1])
    with pytest.raises(AlphabetError):
        boole_to_check(d, "a")
    with pytest.raises(AlphabetError):
        check_to_boole(d, "a", 1, 1)


def test_fresh_names_avoid_existing_nodes():
    d = GraphDatabase("a", ["u", "v"], [("u", "a", "v")])
    db, q, u, v = boole_to_check(d, "a")
    assert u not in d and v not in d
    assert check(db, q, u, v)


def test_round_trips_random():
    rng = random.Random(11)
    for _ in range(100):
        d = random_db(rng, "ab", max_nodes=6, max_arcs=12)
        q = parse_rpq(rng.choice(["a", "ab", "a+b", "(a|b)*", "%", "b+a*"]))
        assert boole(d, q) == check(*boole_to_check(d, q))
        u, v = rng.choice(d.nodes), rng.choice(d.nodes)
        assert check(d, q, u, v) == boole(*check_to_boole(d, q, u, v))
