"""Strongly connected components and the condensation DAG."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import SigmaGraph


@dataclass
class SccDag:
    """Components numbered ``1..count`` so that every DAG arc goes to a smaller number.

    ``comp[k]`` is the component of node ``k``; ``dag[j]`` lists the distinct
    successor components of component ``j`` (``dag[0]`` is unused).
    """

    comp: list[int]
    count: int
    dag: list[list[int]]

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count + 1)]
        for k, j in enumerate(self.comp):
            out[j].append(k)
        return out


def _tarjan(adj: list[list[int]]) -> tuple[list[int], int]:
    n = len(adj)
    index = [0] * n  # 0 = unvisited, else discovery time + 1
    low = [0] * n
    on_stack = [False] * n
    comp = [0] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root]:
            continue
        counter += 1
        index[root] = low[root] = counter
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            row = adj[v]
            if pos < len(row):
                work[-1] = (v, pos + 1)
                w = row[pos]
                if not index[w]:
                    counter += 1
                    index[w] = low[w] = counter
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                # components complete in reverse topological order
                ncomp += 1
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
    return comp, ncomp


def condense(adj: list[list[int]]) -> SccDag:
    """Tarjan's algorithm followed by a deduplicated condensation.

    Duplicate DAG arcs are filtered with a marker array holding, per target
    component, the last source component that already recorded it.
    """
    comp, count = _tarjan(adj)
    members: list[list[int]] = [[] for _ in range(count + 1)]
    for k, j in enumerate(comp):
        members[j].append(k)
    last_source = [0] * (count + 1)
    dag: list[list[int]] = [[] for _ in range(count + 1)]
    for j in range(1, count + 1):
        for k in members[j]:
            for t in adj[k]:
                jt = comp[t]
                if jt != j and last_source[jt] != j:
                    last_source[jt] = j
                    dag[j].append(jt)
    return SccDag(comp, count, dag)


def tarjan_scc(g: SigmaGraph | list[list[int]]) -> SccDag:
    """Condensation of a SigmaGraph (node positions index ``comp``) or an adjacency list."""
    if isinstance(g, SigmaGraph):
        pos = {u: i for i, u in enumerate(g)}
        adj = [list(dict.fromkeys(pos[v] for row in g.out_lists(u).values() for v in row)) for u in g]
    else:
        adj = g
    return condense(adj)
