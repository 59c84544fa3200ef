"""A subset of q(D) that still covers every source and every target of q(D)."""
from __future__ import annotations

from collections import deque
from typing import Hashable

from .graph import GraphDatabase
from .meter import UNORDERED, ListEnumerator
from .product import ProductGraph, QueryLike, build_product


def _propagate(adj: list[list[int]], seeds: list[tuple[int, int]], size: int) -> tuple[list[int], int]:
    """Multi-source BFS; every reached node keeps the label of the seed that found it first."""
    rep = [0] * size
    queue = deque()
    for k, label in seeds:
        rep[k] = label
        queue.append(k)
    steps = 2 * len(seeds)
    while queue:
        k = queue.popleft()
        label = rep[k]
        row = adj[k]
        steps += 1 + len(row)
        for t in row:
            if not rep[t]:
                rep[t] = label
                queue.append(t)
                steps += 1
    return rep, steps


def _approximation(pg: ProductGraph) -> tuple[list[tuple[int, int]], int]:
    n, nq, start, final = pg.n, pg.states, pg.start, pg.final
    size = pg.node_count
    sources = [((i - 1) * nq + start, i) for i in range(1, n + 1)]
    targets = [((i - 1) * nq + final, i) for i in range(1, n + 1)]
    source_of, s1 = _propagate(pg.adj, sources, size)
    target_of, s2 = _propagate(pg.reverse_adj(), targets, size)
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        j = target_of[(i - 1) * nq + start]
        if j and (i, j) not in seen:
            seen.add((i, j))
            pairs.append((i, j))
    for i in range(1, n + 1):
        h = source_of[(i - 1) * nq + final]
        if h and (h, i) not in seen:
            seen.add((h, i))
            pairs.append((h, i))
    return pairs, s1 + s2 + 2 * (size + pg.arc_count) + 2 * n


def compute_approximation(d: GraphDatabase, q: QueryLike) -> list[tuple[Hashable, Hashable]]:
    """At most ``2 |V_D|`` pairs of q(D) whose left and right projections match those of q(D)."""
    pg = build_product(d, q)
    pairs, _ = _approximation(pg)
    pi = pg.pi
    return [(pi[i], pi[j]) for i, j in pairs]


def enum_approx(d: GraphDatabase, q: QueryLike) -> ListEnumerator:
    """Compute the approximation up front, then emit it with constant delay."""
    pg = build_product(d, q)
    pairs, steps = _approximation(pg)
    e = ListEnumerator(d, pg.pi, pairs, order=UNORDERED)
    e.prep_steps = steps
    return e
