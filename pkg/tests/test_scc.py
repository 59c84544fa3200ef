from hypothesis import given
from hypothesis import strategies as st

from rpq.graph import SigmaGraph
from rpq.scc import tarjan_scc


def _graph(n, arcs):
    return SigmaGraph("a", range(n), [(u, "a", v) for u, v in arcs])


def test_cycle_is_one_component():
    dag = tarjan_scc(_graph(3, [(0, 1), (1, 2), (2, 0)]))
    assert dag.count == 1


def test_chain_numbers_sinks_first():
    dag = tarjan_scc(_graph(3, [(0, 1), (1, 2)]))
    assert dag.count == 3
    assert dag.comp[2] == 1
    assert dag.comp[0] == 3


def test_disjoint_nodes():
    dag = tarjan_scc(_graph(2, []))
    assert sorted(dag.comp) == [1, 2]


def _reach(n, adj, s):
    seen, stack = {s}, [s]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=25))))
def test_partition_and_reverse_topological(case):
    n, arcs = case
    adj = [[] for _ in range(n)]
    for u, v in arcs:
        adj[u].append(v)
    dag = tarjan_scc(adj)
    reach = [_reach(n, adj, s) for s in range(n)]
    for u in range(n):
        for v in range(n):
            same = v in reach[u] and u in reach[v]
            assert (dag.comp[u] == dag.comp[v]) == same
    assert set(dag.comp) == set(range(1, dag.count + 1))
    for j in range(1, dag.count + 1):
        succs = dag.dag[j]
        assert len(succs) == len(set(succs))
        assert all(k < j for k in succs)
    expected = {(dag.comp[u], dag.comp[v]) for u, v in arcs if dag.comp[u] != dag.comp[v]}
    assert {(j, k) for j in range(1, dag.count + 1) for k in dag.dag[j]} == expected
