"""Sorted enumeration of q(D): the linear-delay baseline with cheap updates and
the enumerator whose delay depends only on the number of database nodes."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from sortedcontainers import SortedList

from .graph import ADD_NODE, DELETE_NODE, GraphDatabase, Update, apply_update, degree_stats
from .meter import SEMI_SORTED, SORTED, Enumerator, tree_cost
from .product import ProductGraph, QueryLike, as_nfa, build_product
from .scc import SccDag, condense

SORTED_TREE = "sorted-tree"
LAZY_UNSORTED = "lazy-unsorted"


class BaselineEnumerator(Enumerator):
    """Row-by-row BFS enumeration; all preprocessing happens before the first output."""

    order = SORTED

    def __init__(self, d: GraphDatabase, q: QueryLike) -> None:
        super().__init__(d, None)
        self._source = d
        self._nfa = as_nfa(q, d.alphabet)

    def _run(self) -> Iterator[tuple[int, int]]:
        meter = self.meter
        pg = build_product(self._source, self._nfa)
        self._pi = pg.pi
        n, nq, start, final, adj = pg.n, pg.states, pg.start, pg.final, pg.adj
        size = pg.node_count + pg.arc_count
        radj = pg.reverse_adj()
        meter.steps += 2 * size

        # backward search from a virtual sink fed by every (i, final)
        seen = bytearray(pg.node_count)
        queue = deque()
        for i in range(n):
            k = i * nq + final
            seen[k] = 1
            queue.append(k)
        meter.steps += 2 * n
        while queue:
            k = queue.popleft()
            row = radj[k]
            meter.steps += 1 + len(row)
            for t in row:
                if not seen[t]:
                    seen[t] = 1
                    queue.append(t)
                    meter.steps += 1
        nonempty = bytearray(n + 1)
        for i in range(1, n + 1):
            nonempty[i] = seen[(i - 1) * nq + start]
        meter.steps += n

        stamp = [0] * pg.node_count
        targets = bytearray(n + 1)
        for i in range(1, n + 1):
            meter.steps += 1
            if not nonempty[i]:
                continue
            src = (i - 1) * nq + start
            stamp[src] = i
            queue.append(src)
            meter.steps += 2
            while queue:
                k = queue.popleft()
                row = adj[k]
                meter.steps += 1 + len(row)
                if k % nq == final:
                    targets[k // nq + 1] = 1
                    meter.steps += 1
                for t in row:
                    if stamp[t] != i:
                        stamp[t] = i
                        queue.append(t)
                        meter.steps += 1
            for j in range(1, n + 1):
                meter.steps += 1
                if targets[j]:
                    targets[j] = 0
                    yield i, j


def enum_baseline(d: GraphDatabase, q: QueryLike) -> BaselineEnumerator:
    return BaselineEnumerator(d, q)


# bookkeeping charged per accepted update: record it, one adjacency-list
# operation, one degree counter, and raising the invalidation flag
UPDATE_COST = {ADD_NODE: 3, DELETE_NODE: 3}
ARC_UPDATE_COST = 4


class DynamicBaseline:
    """Keeps a database and a query; updates are recorded and outstanding
    enumerations invalidated, and :meth:`enumerate` restarts from scratch."""

    def __init__(self, d: GraphDatabase, q: QueryLike) -> None:
        self.db = d
        self.nfa = as_nfa(q, d.alphabet)
        self.update_costs: list[int] = []
        self.invalidated = False

    def apply(self, upd: Update) -> int:
        apply_update(self.db, upd)
        cost = UPDATE_COST.get(upd.kind, ARC_UPDATE_COST)
        self.update_costs.append(cost)
        self.invalidated = True
        return cost

    def enumerate(self) -> BaselineEnumerator:
        self.invalidated = False
        return BaselineEnumerator(self.db, self.nfa)


def baseline_on_update(state: DynamicBaseline, upd: Update) -> BaselineEnumerator:
    state.apply(upd)
    return state.enumerate()


# -- enumeration after super-linear preprocessing ----------------------------


def default_cap(d: GraphDatabase, nfa_states: int) -> int:
    avg = degree_stats(d).avg_degree
    return max(1, math.ceil(avg) * nfa_states)


@dataclass
class SublinearState:
    product: ProductGraph
    scc: SccDag
    cap: int
    mode: str
    buffers: list[list[int]]  # Z_j per component, index 0 unused
    flags: bytearray  # S[i]: row i of q(D) is nonempty
    prep_steps: int = 0
    version: int = field(default=0)
    source: GraphDatabase | None = None

    def row_buffer(self, i: int) -> list[int]:
        pg = self.product
        return self.buffers[self.scc.comp[pg.index(i, pg.start)]]


def sublinear_prepare(
    d: GraphDatabase, q: QueryLike, mode: str = SORTED_TREE, cap: int | None = None
) -> SublinearState:
    """Product, condensation, and per-component buffers of the smallest
    (sorted-tree) or first-found (lazy-unsorted) reachable targets."""
    if mode not in (SORTED_TREE, LAZY_UNSORTED):
        raise ValueError(f"unknown mode {mode!r}")
    pg = build_product(d, q)
    n, nq = pg.n, pg.states
    K = cap if cap is not None else default_cap(pg.db, nq)
    if K < 1:
        raise ValueError("cap must be at least 1")
    scc = condense(pg.adj)
    steps = 3 * (pg.node_count + pg.arc_count)
    count = scc.count
    rdag: list[list[int]] = [[] for _ in range(count + 1)]
    for j in range(1, count + 1):
        for jt in scc.dag[j]:
            rdag[jt].append(j)
    steps += sum(len(r) for r in rdag)

    if mode == SORTED_TREE:
        unit = tree_cost(K)
        trees: list[SortedList] = [SortedList() for _ in range(count + 1)]
        for i in range(1, n + 1):
            j = scc.comp[(i - 1) * nq + pg.final]
            t = trees[j]
            t.add(i)
            steps += unit
            if len(t) > K:
                t.pop()
                steps += unit
        for j in range(1, count + 1):
            src = trees[j]
            for jp in rdag[j]:
                dst = trees[jp]
                for e in src:
                    steps += unit
                    if len(dst) == K and e > dst[-1]:
                        break  # src is sorted: nothing later fits either
                    if e in dst:
                        continue
                    dst.add(e)
                    if len(dst) > K:
                        dst.pop()
                        steps += unit
        buffers = [list(t) for t in trees]
    else:
        lists: list[list[int]] = [[] for _ in range(count + 1)]
        members: list[set[int]] = [set() for _ in range(count + 1)]
        for i in range(1, n + 1):
            j = scc.comp[(i - 1) * nq + pg.final]
            steps += 1
            if len(lists[j]) < K:
                lists[j].append(i)
                members[j].add(i)
        for j in range(1, count + 1):
            src = lists[j]
            for jp in rdag[j]:
                dst, seen = lists[jp], members[jp]
                for e in src:
                    steps += 1
                    if len(dst) >= K:
                        break
                    if e not in seen:
                        seen.add(e)
                        dst.append(e)
            members[j] = set()  # no longer needed once all predecessors are fed
        buffers = lists
    steps += sum(len(b) for b in buffers)
    flags = bytearray(n + 1)
    for i in range(1, n + 1):
        flags[i] = 1 if buffers[scc.comp[(i - 1) * nq + pg.start]] else 0
    steps += n
    return SublinearState(pg, scc, K, mode, buffers, flags, steps, d.version, d)


class SublinearEnumerator(Enumerator):
    def __init__(self, state: SublinearState) -> None:
        super().__init__(state.source, state.product.pi)
        self._version = state.version
        self.state = state
        self.order = SORTED if state.mode == SORTED_TREE else SEMI_SORTED

    def _run(self) -> Iterator[tuple[int, int]]:
        st, meter = self.state, self.meter
        pg = st.product
        n, nq, start, final, adj = pg.n, pg.states, pg.start, pg.final, pg.adj
        comp, buffers, K = st.scc.comp, st.buffers, st.cap
        lazy = st.mode == LAZY_UNSORTED
        budget = n * nq
        row_marks = bytearray(n + 1)  # T; 2 marks buffered targets in lazy mode
        stamp = [0] * pg.node_count
        queue: deque[int] = deque()
        for i in range(1, n + 1):
            meter.steps += 1
            if not st.flags[i]:
                continue
            src = (i - 1) * nq + start
            z = buffers[comp[src]]
            meter.steps += 1
            if len(z) < K:
                for j in z:
                    meter.steps += 1
                    yield i, j
                continue
            # the row may be longer than the buffer: search the whole row while
            # paying for the search with one buffered output per `budget` steps
            if lazy:
                for j in z:
                    row_marks[j] = 2
                meter.steps += len(z)
            pos = 0
            last = meter.steps
            stamp[src] = i
            queue.append(src)
            meter.steps += 2
            while queue:
                k = queue.popleft()
                row = adj[k]
                meter.steps += 1 + len(row)
                if k % nq == final:
                    v = k // nq + 1
                    if not row_marks[v]:
                        row_marks[v] = 1
                    meter.steps += 1
                for t in row:
                    if stamp[t] != i:
                        stamp[t] = i
                        queue.append(t)
                        meter.steps += 1
                if pos < K and meter.steps - last >= budget:
                    meter.steps += 1
                    yield i, z[pos]
                    pos += 1
                    last = meter.steps
            while pos < K:
                meter.steps += 1
                yield i, z[pos]
                pos += 1
            bound = 0 if lazy else z[-1]
            for j in range(1, n + 1):
                meter.steps += 1
                mark = row_marks[j]
                if mark:
                    row_marks[j] = 0
                    if mark == 1 and j > bound:
                        yield i, j


def enum_sublinear(state: SublinearState) -> SublinearEnumerator:
    return SublinearEnumerator(state)
