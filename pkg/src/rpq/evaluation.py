"""Boole, Check, Witness, Eval and Count, plus the two problem transformations."""
from __future__ import annotations

from collections import deque
from typing import Hashable

import numpy as np

from .errors import AlphabetError, UnknownNodeError
from .graph import EPSILON, GraphDatabase, well_form
from .product import ProductGraph, QueryLike, as_nfa, build_product, pair_reachable
from .query import Concat, Lit, Nfa, Regex, parse_rpq

Pair = tuple[Hashable, Hashable]

FRESH = "#"


def witness(d: GraphDatabase, q: QueryLike) -> Pair | None:
    """Some pair of q(D), found by one BFS from a virtual super-source.

    The super-source points at every ``(u, start)`` in node order and each
    product node inherits the origin of the node it was discovered from.
    """
    pg = build_product(d, q)
    nq, start, final = pg.states, pg.start, pg.final
    origin = [0] * pg.node_count
    queue: deque[int] = deque()
    for u in range(1, pg.n + 1):
        k = (u - 1) * nq + start
        origin[k] = u
        queue.append(k)
    adj = pg.adj
    while queue:
        k = queue.popleft()
        if k % nq == final:
            return pg.pi[origin[k]], pg.pi[k // nq + 1]
        o = origin[k]
        for t in adj[k]:
            if not origin[t]:
                origin[t] = o
                queue.append(t)
    return None


def boole(d: GraphDatabase, q: QueryLike) -> bool:
    return witness(d, q) is not None


def check(d: GraphDatabase, q: QueryLike, u: Hashable, v: Hashable) -> bool:
    return pair_reachable(build_product(d, q), u, v)


def _rows(pg: ProductGraph):
    """Yield (i, sorted targets of row i) with one BFS per source node."""
    nq, start, final, adj = pg.states, pg.start, pg.final, pg.adj
    stamp = [0] * pg.node_count
    for i in range(1, pg.n + 1):
        src = (i - 1) * nq + start
        stamp[src] = i
        queue = deque([src])
        row = []
        while queue:
            k = queue.popleft()
            if k % nq == final:
                row.append(k // nq + 1)
            for t in adj[k]:
                if stamp[t] != i:
                    stamp[t] = i
                    queue.append(t)
        row.sort()
        yield i, row


def eval_all(d: GraphDatabase, q: QueryLike) -> list[Pair]:
    """q(D) as a list sorted lexicographically by node order."""
    pg = build_product(d, q)
    pi = pg.pi
    return [(pi[i], pi[j]) for i, row in _rows(pg) for j in row]


def count(d: GraphDatabase, q: QueryLike) -> int:
    return sum(len(row) for _, row in _rows(build_product(d, q)))


# -- transformations ---------------------------------------------------------


def _fresh_node(d: GraphDatabase, base: str) -> str:
    name = base
    while name in d:
        name += "'"
    return name


def _as_ast(q: QueryLike, alphabet) -> Regex:
    if isinstance(q, Nfa):
        raise TypeError("transformations need a query expression, not an automaton")
    return parse_rpq(q, alphabet) if isinstance(q, str) else q


def _with_marker(d: GraphDatabase) -> GraphDatabase:
    if FRESH in d.alphabet:
        raise AlphabetError(f"{FRESH!r} is already in the alphabet")
    out = GraphDatabase(d.alphabet + (FRESH,), d)
    for u, x, v in d.arcs():
        out.add_arc(u, x, v)
    return out


def _bracket(ast: Regex) -> Regex:
    return Concat(Concat(Lit(FRESH), ast), Lit(FRESH))


def boole_to_check(d: GraphDatabase, q: QueryLike) -> tuple[GraphDatabase, Regex, str, str]:
    """Turn non-emptiness into a single-pair check on an extended database."""
    ast = _as_ast(q, d.alphabet)
    out = _with_marker(d)
    u = _fresh_node(d, "u")
    out.add_node(u)
    v = _fresh_node(out, "v")
    out.add_node(v)
    for x in d:
        out.add_arc(u, FRESH, x)
        out.add_arc(x, FRESH, v)
    return out, _bracket(ast), u, v


def check_to_boole(
    d: GraphDatabase, q: QueryLike, u: Hashable, v: Hashable
) -> tuple[GraphDatabase, Regex]:
    """Turn a single-pair check into non-emptiness on an extended database."""
    ast = _as_ast(q, d.alphabet)
    for node in (u, v):
        if node not in d:
            raise UnknownNodeError(node)
    out = _with_marker(d)
    s = _fresh_node(d, "s")
    out.add_node(s)
    t = _fresh_node(out, "t")
    out.add_node(t)
    out.add_arc(s, FRESH, u)
    out.add_arc(v, FRESH, t)
    return out, _bracket(ast)


# -- oracle ------------------------------------------------------------------


def oracle_eval(d: GraphDatabase, q: QueryLike, max_nodes: int = 4096) -> list[Pair]:
    """q(D) from a boolean Warshall closure of the product adjacency matrix.

    The product matrix is assembled straight from the arc sets of the
    database and the automaton, independently of :func:`build_product`.
    """
    m = as_nfa(q, d.alphabet)
    wd, pi = well_form(d)
    n, nq = len(wd), m.state_count
    size = n * nq
    if size > max_nodes:
        raise ValueError(f"product has {size} nodes, above the oracle bound {max_nodes}")
    reach = np.eye(size, dtype=bool)
    nfa_arcs = list(m.graph.arcs())
    db_arcs = list(wd.arcs())
    for p, x, r in nfa_arcs:
        if x == EPSILON:
            for u in range(n):
                reach[u * nq + p, u * nq + r] = True
        else:
            for u, y, v in db_arcs:
                if y == x:
                    reach[(u - 1) * nq + p, (v - 1) * nq + r] = True
    for k in range(size):
        col = reach[:, k]
        rows = np.nonzero(col)[0]
        if rows.size:
            reach[rows] |= reach[k]
    out = []
    for i in range(n):
        for j in range(n):
            if reach[i * nq + m.start, j * nq + m.final]:
                out.append((pi[i + 1], pi[j + 1]))
    return out
