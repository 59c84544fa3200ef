"""Product of a graph database with a query automaton."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Union

from .errors import AlphabetError, UnknownNodeError
from .graph import EPSILON, GraphDatabase, SigmaGraph, well_form
from .query import Nfa, Regex, compile_nfa, parse_rpq

QueryLike = Union[str, Regex, Nfa]


def as_nfa(q: QueryLike, alphabet=None) -> Nfa:
    if isinstance(q, Nfa):
        return q
    if isinstance(q, str):
        q = parse_rpq(q, alphabet)
    return compile_nfa(q, alphabet)


@dataclass
class ProductGraph:
    """Product graph over well-formed database nodes ``1..n`` and NFA states.

    Node ``(u, p)`` has dense index ``(u - 1) * states + p``.  ``adj`` is the
    deduplicated underlying (unlabelled) adjacency; ``pi`` maps database
    indices back to the caller's node ids.
    """

    db: GraphDatabase
    nfa: Nfa
    pi: list[Hashable]
    n: int
    states: int
    adj: list[list[int]]
    labelled: list[tuple[int, str, int]]

    @property
    def start(self) -> int:
        return self.nfa.start

    @property
    def final(self) -> int:
        return self.nfa.final

    @property
    def node_count(self) -> int:
        return self.n * self.states

    @property
    def arc_count(self) -> int:
        return len(self.labelled)

    def index(self, u: int, p: int) -> int:
        return (u - 1) * self.states + p

    def split(self, k: int) -> tuple[int, int]:
        u, p = divmod(k, self.states)
        return u + 1, p

    def reverse_adj(self) -> list[list[int]]:
        radj: list[list[int]] = [[] for _ in range(self.node_count)]
        for k, row in enumerate(self.adj):
            for t in row:
                radj[t].append(k)
        return radj

    @property
    def graph(self) -> SigmaGraph:
        """The labelled product as a SigmaGraph on ``(u, p)`` tuples."""
        g = SigmaGraph(self.nfa.graph.alphabet)
        for u in range(1, self.n + 1):
            for p in range(self.states):
                g.add_node((self.pi[u], p))
        for k, x, t in self.labelled:
            (u, p), (v, r) = self.split(k), self.split(t)
            g.add_arc((self.pi[u], p), x, (self.pi[v], r))
        return g


def build_product(d: GraphDatabase, q: QueryLike) -> ProductGraph:
    """Materialize the product; one pass over every (node, state) pair."""
    m = as_nfa(q, d.alphabet)
    for x in m.graph.alphabet:
        if x not in d.alphabet:
            raise AlphabetError(f"query symbol {x!r} is not in the database alphabet")
    if isinstance(d, GraphDatabase) and d.is_well_formed():
        wd, pi = d, [None, *d]
    else:
        wd, pi = well_form(d)
    n, nq = len(wd), m.state_count
    # per NFA state: its (label, successors) lists
    nfa_lists = [list(m.graph.out_lists(p).items()) for p in range(nq)]
    adj: list[list[int]] = []
    labelled: list[tuple[int, str, int]] = []
    for u in range(1, n + 1):
        db_lists = wd.out_lists(u)
        for p in range(nq):
            k = (u - 1) * nq + p
            row: list[int] = []
            for x, succ in nfa_lists[p]:
                if x == EPSILON:
                    base = (u - 1) * nq
                    for r in succ:
                        row.append(base + r)
                        labelled.append((k, x, base + r))
                    continue
                targets = db_lists.get(x)
                if not targets:
                    continue
                for v in targets:
                    base = (v - 1) * nq
                    for r in succ:
                        row.append(base + r)
                        labelled.append((k, x, base + r))
            if len(row) > 1:
                row = list(dict.fromkeys(row))
            adj.append(row)
    return ProductGraph(wd, m, pi, n, nq, adj, labelled)


def node_index(pg: ProductGraph, u: Hashable) -> int:
    """Database index of a caller node id."""
    try:
        return pg.pi.index(u, 1)
    except ValueError:
        raise UnknownNodeError(u) from None


def pair_reachable(pg: ProductGraph, u: Hashable, v: Hashable) -> bool:
    """True iff (u, start) reaches (v, final) in the underlying product."""
    i, j = node_index(pg, u), node_index(pg, v)
    src, dst = pg.index(i, pg.start), pg.index(j, pg.final)
    seen = bytearray(pg.node_count)
    seen[src] = 1
    queue = deque([src])
    while queue:
        k = queue.popleft()
        if k == dst:
            return True
        for t in pg.adj[k]:
            if not seen[t]:
                seen[t] = 1
                queue.append(t)
    return False
