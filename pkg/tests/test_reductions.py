import pytest

from rpq import reductions as red
from rpq.approx import compute_approximation
from rpq.enumeration import DynamicBaseline
from rpq.evaluation import check, count, eval_all
from rpq.graph import CHECKPOINT
from rpq.reductions import (
    BmmInstance,
    OmvInstance,
    OvInstance,
    TriInstance,
    bmm_brute,
    bmm_to_eval,
    omv_brute,
    omv_to_dynamic_enum,
    ov_brute,
    ov_to_check,
    ov_to_count,
    sbmm_to_eval,
    solve,
    tri_brute,
    tri_to_boole,
    tri_to_dynamic_enum,
)
from rpq.restricted import enum_restricted

K3 = TriInstance.build(3, [(1, 2), (2, 3), (1, 3)])


def test_ov_to_check_examples():
    for A, B, expected in [
        (((1, 0),), ((0, 1),), True),
        (((1, 1),), ((1, 1),), False),
        (((0, 0),), ((1, 1),), True),
    ]:
        r = ov_to_check(OvInstance(A, B))
        assert check(r.db, r.query, *r.pair) == expected
        assert solve(r) == expected == ov_brute(OvInstance(A, B))


def test_tri_to_boole_examples():
    assert solve(tri_to_boole(K3)) is True
    assert solve(tri_to_boole(TriInstance.build(3, [(1, 2), (2, 3)]))) is False
    assert solve(tri_to_boole(TriInstance.build(3, []))) is False


def test_bmm_examples():
    ident = BmmInstance.from_dense([[1, 0], [0, 1]], [[1, 0], [0, 1]])
    assert solve(bmm_to_eval(ident)) == [[1, 0], [0, 1]]
    inst = BmmInstance.from_dense([[1, 1], [0, 0]], [[0, 1], [1, 0]])
    assert solve(bmm_to_eval(inst)) == [[1, 1], [0, 0]] == bmm_brute(inst)
    zero = BmmInstance.from_dense([[0, 0], [0, 0]], [[1, 1], [1, 1]])
    r = bmm_to_eval(zero)
    assert eval_all(r.db, r.query) == []


def test_sbmm_examples():
    inst = BmmInstance(3, frozenset({(1, 2)}), frozenset({(2, 3)}), sparse=True)
    r = sbmm_to_eval(inst)
    assert len(r.db) == 3 and r.db.arc_count == 2
    assert solve(r)[0][2] == 1
    empty = BmmInstance(3, frozenset(), frozenset({(2, 3)}), sparse=True)
    assert sbmm_to_eval(empty).db.arc_count == 0


def test_ov_to_count_examples():
    r = ov_to_count(OvInstance(((1, 1),), ((1, 1),)))
    assert count(r.db, r.query) == 1 and solve(r) is False
    r = ov_to_count(OvInstance(((1, 0),), ((0, 1),)))
    assert count(r.db, r.query) == 0 and solve(r) is True
    r = ov_to_count(OvInstance(((1, 0), (0, 1)), ((1, 0), (1, 1))))
    assert count(r.db, r.query) == 3 and solve(r) is True


def test_omv_examples():
    inst = OmvInstance(((1, 0), (0, 1)), ((1, 0), (0, 1)))
    assert solve(omv_to_dynamic_enum(inst))[0] == [1, 0]
    zero = OmvInstance(((0, 0), (0, 0)), ((1, 1), (0, 1)))
    assert solve(omv_to_dynamic_enum(zero)) == [[0, 0], [0, 0]]
    rand = red.random_source("omv", 6, seed=4)
    assert solve(omv_to_dynamic_enum(rand)) == omv_brute(rand)


def test_tridyn_examples():
    assert solve(tri_to_dynamic_enum(K3)) == [True, True, True]
    assert solve(tri_to_dynamic_enum(TriInstance.build(4, [(1, 2), (2, 3), (3, 4)]))) == [False] * 4
    k3_plus = TriInstance.build(4, [(1, 2), (2, 3), (1, 3)])
    assert solve(tri_to_dynamic_enum(k3_plus)) == [True, True, True, False]


def test_brute_solvers():
    assert ov_brute(OvInstance(((0, 1),), ((1, 0),)))
    assert tri_brute(K3)
    x = BmmInstance.from_dense([[1, 0], [0, 1]], [[0, 1], [1, 1]])
    assert bmm_brute(x) == [[0, 1], [1, 1]]


def test_instances_validate():
    with pytest.raises(ValueError):
        OvInstance(((1, 0),), ((1,),))
    with pytest.raises(ValueError):
        TriInstance.build(3, [(1, 1)])
    with pytest.raises(ValueError):
        BmmInstance.from_dense([[1, 0]], [[1]])


@pytest.mark.parametrize("kind", red.KINDS)
def test_random_agreement(kind):
    for seed in range(40):
        inst = red.random_source(kind, 2 + seed % 5, d=1 + seed % 6, p=0.3 + 0.1 * (seed % 4), seed=seed)
        assert solve(red.CONSTRUCT[kind](inst)) == red.brute(kind, inst)


@pytest.mark.parametrize("kind", red.KINDS)
def test_json_round_trip(kind):
    inst = red.random_source(kind, 4, seed=2)
    assert red.source_from_json(kind, red.source_to_json(inst)) == inst


def test_dense_and_sparse_bmm_agree():
    for seed in range(30):
        inst = red.random_source("bmm", 5, p=0.3, seed=seed)
        sparse = BmmInstance(inst.n, inst.a, inst.b, sparse=True)
        assert solve(bmm_to_eval(inst)) == solve(sbmm_to_eval(sparse))


def test_restricted_decodes_bmm():
    for seed in range(30):
        inst = red.random_source("bmm", 5, p=0.4, seed=seed)
        r = bmm_to_eval(inst)
        assert r.decode(sorted(enum_restricted(r.db, r.query), key=str)) == bmm_brute(inst)


@pytest.mark.parametrize("kind", ["omv", "tridyn"])
def test_approximation_is_exact_on_dynamic_instances(kind):
    for seed in range(20):
        r = red.CONSTRUCT[kind](red.random_source(kind, 5, p=0.5, seed=seed))
        state = DynamicBaseline(r.db, r.query)
        for item in r.script:
            if item == CHECKPOINT:
                assert set(compute_approximation(state.db, r.query)) == set(eval_all(state.db, r.query))
            else:
                state.apply(item)
