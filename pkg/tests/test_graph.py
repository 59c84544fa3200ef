from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import d1, db_strategy
from rpq.errors import AlphabetError, GraphFormatError, UnknownNodeError, UpdateError
from rpq.graph import (
    GraphDatabase,
    SigmaGraph,
    Update,
    apply_update,
    degree_stats,
    format_update_script,
    load_edge_list,
    parse_update_script,
    reverse,
    save_edge_list,
    well_form,
)


def test_reverse_d1():
    assert reverse(d1()).arc_set() == {(2, "a", 1), (3, "b", 2), (3, "a", 2)}


def test_reverse_empty_and_involution():
    assert reverse(GraphDatabase("a")).arc_set() == set()
    assert reverse(reverse(d1())).arc_set() == d1().arc_set()


def test_reverse_keeps_node_order():
    g = GraphDatabase("a", ["z", "x", "y"], [("z", "a", "y")])
    assert reverse(g).nodes == ["z", "x", "y"]


def test_well_form_relabels_in_list_order():
    d = GraphDatabase("a", ["x", "y"], [("x", "a", "y")])
    w, pi = well_form(d)
    assert w.nodes == [1, 2]
    assert w.arc_set() == {(1, "a", 2)}
    assert pi[1:] == ["x", "y"]
    w2, pi2 = well_form(GraphDatabase("a", ["z", "x"]))
    assert pi2[1:] == ["z", "x"]


def test_well_form_identity_on_well_formed():
    w, pi = well_form(d1())
    assert w.arc_set() == d1().arc_set()
    assert pi[1:] == [1, 2, 3]


@given(db_strategy())
def test_well_form_is_an_isomorphism(d):
    w, pi = well_form(d)
    assert {(pi[i], x, pi[j]) for i, x, j in w.arcs()} == d.arc_set()
    assert w.is_well_formed()


def test_degree_stats():
    s = degree_stats(d1())
    assert (s.max_degree, s.avg_degree) == (1, Fraction(2, 3))
    star_graph = GraphDatabase("a", [1, 2, 3, 4], [(1, "a", 2), (1, "a", 3), (1, "a", 4)])
    s = degree_stats(star_graph)
    assert (s.max_degree, s.avg_degree) == (3, Fraction(3, 4))
    s = degree_stats(GraphDatabase("a", [1, 2]))
    assert (s.max_degree, s.avg_degree) == (0, 0)


@given(db_strategy(alphabet="abc"))
def test_degree_sum_is_exact(d):
    s = degree_stats(d)
    assert s.avg_degree * s.node_count == sum(d.degree(u) for u in d)
    assert s.avg_degree <= s.max_degree <= s.node_count


def test_updates_on_d1():
    d = apply_update(d1(), Update.insert_arc(3, "a", 1))
    assert d.arc_set() == d1().arc_set() | {(3, "a", 1)}
    d = apply_update(d1(), Update.delete_arc(1, "a", 2))
    assert d.arc_set() == d1().arc_set() - {(1, "a", 2)}
    with pytest.raises(UpdateError):
        apply_update(d1(), Update.delete_node(2))
    with pytest.raises(UpdateError):
        apply_update(d1(), Update.delete_arc(1, "b", 2))
    with pytest.raises(UnknownNodeError):
        apply_update(d1(), Update.insert_arc(1, "a", 9))


@given(
    st.lists(
        st.tuples(st.sampled_from(["ins", "del", "add", "rm"]), st.integers(1, 5), st.sampled_from("ab"), st.integers(1, 5)),
        max_size=40,
    )
)
def test_updates_match_set_model(ops):
    d = GraphDatabase("ab", [1, 2, 3])
    nodes, arcs = {1, 2, 3}, set()
    for op, u, x, v in ops:
        if op == "ins" and u in nodes and v in nodes and (u, x, v) not in arcs:
            apply_update(d, Update.insert_arc(u, x, v))
            arcs.add((u, x, v))
        elif op == "del" and (u, x, v) in arcs:
            apply_update(d, Update.delete_arc(u, x, v))
            arcs.discard((u, x, v))
        elif op == "add" and u not in nodes:
            apply_update(d, Update.add_node(u))
            nodes.add(u)
        elif op == "rm" and u in nodes and not any(u in (a, b) for a, _, b in arcs):
            apply_update(d, Update.delete_node(u))
            nodes.discard(u)
    assert d.arc_set() == arcs
    assert set(d.nodes) == nodes


def test_load_simple_and_dedup():
    d = load_edge_list("alphabet a\nnode 1\nnode 2\nedge 1 a 2\n")
    assert d.arc_set() == {("1", "a", "2")}
    d = load_edge_list("alphabet a\nnode 1\nnode 2\nedge 1 a 2\nedge 1 a 2\n")
    assert d.arc_count == 1


def test_load_errors():
    with pytest.raises(GraphFormatError):
        load_edge_list("alphabet a b\nnode 1\nnode 2\nedge 1 q 2\n")
    with pytest.raises(GraphFormatError, match="line 3"):
        load_edge_list("alphabet a\nnode 1\nedge 1 a 2\n")
    with pytest.raises(GraphFormatError):
        load_edge_list("alphabet a\nnode 1\nbogus\n")
    with pytest.raises(GraphFormatError):
        load_edge_list("node 1\n")


def test_save_load_round_trip_normalizes():
    text = "# comment\nalphabet b a\nnode y\nnode x\nedge x a y\nedge y b x\nedge x a y\n"
    d = load_edge_list(text)
    saved = save_edge_list(d)
    assert saved == "alphabet b a\nnode y\nnode x\nedge y b x\nedge x a y\n"
    assert save_edge_list(load_edge_list(saved)) == saved


def test_database_rejects_epsilon_and_foreign_labels():
    d = GraphDatabase("a", [1, 2])
    with pytest.raises(AlphabetError):
        d.add_arc(1, "", 2)
    with pytest.raises(AlphabetError):
        d.add_arc(1, "b", 2)
    g = SigmaGraph("a", [1, 2])
    g.add_arc(1, "", 2)
    assert g.size == 2


def test_update_script_round_trip():
    text = "+node 4\n+edge 1 a 4\n!enum\n-edge 1 a 4\n-node 4\n"
    items = parse_update_script(text)
    assert format_update_script(items) == text
    with pytest.raises(GraphFormatError):
        parse_update_script("+edge 1 a\n")
