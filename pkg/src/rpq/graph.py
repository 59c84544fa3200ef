"""Edge-labelled multigraphs stored as per-label adjacency lists.

A :class:`SigmaGraph` is the one structure used for databases, automata and
product graphs.  Each node keeps, per label, an insertion-ordered set of
successors (a ``dict`` with ``None`` values), which gives constant time
insertion, deletion and duplicate detection while preserving list order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator

from .errors import AlphabetError, GraphFormatError, UnknownNodeError, UpdateError

EPSILON = ""

Node = Hashable
Arc = tuple[Node, str, Node]


class SigmaGraph:
    """Directed, edge-labelled graph over a finite alphabet plus epsilon.

    The node sequence is kept in insertion order and defines the node order
    used by every algorithm in the package.
    """

    allow_epsilon = True

    def __init__(
        self,
        alphabet: Iterable[str] = (),
        nodes: Iterable[Node] = (),
        arcs: Iterable[Arc] = (),
    ) -> None:
        self.alphabet: tuple[str, ...] = ()
        self._adj: dict[Node, dict[str, dict[Node, None]]] = {}
        self._indeg: dict[Node, int] = {}
        self._arc_count = 0
        self.version = 0
        for x in alphabet:
            self.extend_alphabet(x)
        for u in nodes:
            self.add_node(u)
        for u, x, v in arcs:
            self.add_arc(u, x, v)

    # -- alphabet ---------------------------------------------------------

    def extend_alphabet(self, symbol: str) -> None:
        if len(symbol) != 1 or symbol.isspace():
            raise AlphabetError(f"alphabet symbols must be single characters, got {symbol!r}")
        if symbol in "|+*()%":
            raise AlphabetError(f"{symbol!r} is reserved by the query syntax")
        if symbol in self.alphabet:
            raise AlphabetError(f"symbol {symbol!r} already in alphabet")
        self.alphabet = self.alphabet + (symbol,)

    def _check_label(self, x: str) -> None:
        if x == EPSILON:
            if not self.allow_epsilon:
                raise AlphabetError("graph databases cannot contain epsilon arcs")
        elif x not in self.alphabet:
            raise AlphabetError(f"label {x!r} not in alphabet {''.join(self.alphabet)!r}")

    # -- nodes ------------------------------------------------------------

    @property
    def nodes(self) -> list[Node]:
        return list(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, node: object) -> bool:
        return node in self._adj

    def __iter__(self) -> Iterator[Node]:
        return iter(self._adj)

    def add_node(self, u: Node) -> bool:
        """Append *u* to the node sequence; returns False if already present."""
        if u in self._adj:
            return False
        self._adj[u] = {}
        self._indeg[u] = 0
        self.version += 1
        return True

    def remove_node(self, u: Node) -> None:
        self._require(u)
        if not self.is_isolated(u):
            raise UpdateError(f"node {u!r} is not isolated")
        del self._adj[u]
        del self._indeg[u]
        self.version += 1

    def is_isolated(self, u: Node) -> bool:
        self._require(u)
        return self._indeg[u] == 0 and not any(self._adj[u].values())

    def _require(self, u: Node) -> None:
        if u not in self._adj:
            raise UnknownNodeError(u)

    # -- arcs -------------------------------------------------------------

    def add_arc(self, u: Node, x: str, v: Node) -> bool:
        """Insert the arc (u, x, v); duplicates are ignored (returns False)."""
        self._check_label(x)
        self._require(u)
        self._require(v)
        row = self._adj[u].setdefault(x, {})
        if v in row:
            return False
        row[v] = None
        self._indeg[v] += 1
        self._arc_count += 1
        self.version += 1
        return True

    def remove_arc(self, u: Node, x: str, v: Node) -> None:
        self._require(u)
        self._require(v)
        row = self._adj[u].get(x)
        if row is None or v not in row:
            raise UpdateError(f"no arc {u!r} -{x or '%'}-> {v!r}")
        del row[v]
        if not row:
            del self._adj[u][x]
        self._indeg[v] -= 1
        self._arc_count -= 1
        self.version += 1

    def has_arc(self, u: Node, x: str, v: Node) -> bool:
        row = self._adj.get(u, {}).get(x)
        return row is not None and v in row

    def succ(self, u: Node, x: str) -> Iterable[Node]:
        """The x-adjacency list of *u* (empty if none)."""
        return self._adj[u].get(x, ())

    def out_lists(self, u: Node) -> dict[str, dict[Node, None]]:
        """All adjacency lists of *u*, keyed by label."""
        return self._adj[u]

    def labels(self) -> tuple[str, ...]:
        return self.alphabet + ((EPSILON,) if self.allow_epsilon else ())

    def arcs(self) -> Iterator[Arc]:
        """All arcs, grouped by source in node order and by label in alphabet order."""
        order = self.labels()
        for u, lists in self._adj.items():
            for x in order:
                row = lists.get(x)
                if row:
                    for v in row:
                        yield (u, x, v)

    @property
    def arc_count(self) -> int:
        return self._arc_count

    @property
    def size(self) -> int:
        return max(len(self._adj), self._arc_count)

    def degree(self, u: Node) -> int:
        """Number of distinct successors of *u* over all labels."""
        lists = self._adj[u]
        if len(lists) == 1:
            return len(next(iter(lists.values())))
        seen: set[Node] = set()
        for row in lists.values():
            seen.update(row)
        return len(seen)

    def arc_set(self) -> set[Arc]:
        return set(self.arcs())

    def copy(self) -> "SigmaGraph":
        g = type(self)(self.alphabet, self._adj)
        for u, x, v in self.arcs():
            g.add_arc(u, x, v)
        return g

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(alphabet={''.join(self.alphabet)!r}, "
            f"nodes={len(self)}, arcs={self._arc_count})"
        )


class GraphDatabase(SigmaGraph):
    """A SigmaGraph without epsilon arcs; the node sequence is the order."""

    allow_epsilon = False

    def is_well_formed(self) -> bool:
        return all(u == i for i, u in enumerate(self._adj, start=1))


def reverse(g: SigmaGraph) -> SigmaGraph:
    """Return the graph with every arc (u, x, v) replaced by (v, x, u)."""
    r = type(g)(g.alphabet, g.nodes)
    for u, x, v in g.arcs():
        r.add_arc(v, x, u)
    return r


def well_form(d: GraphDatabase) -> tuple[GraphDatabase, list[Node]]:
    """Relabel *d* to nodes ``1..n`` in order.

    Returns the new database and ``pi`` with ``pi[i]`` the original id of
    node ``i`` (``pi[0]`` is unused).
    """
    index: dict[Node, int] = {}
    pi: list[Node] = [None]
    for c, u in enumerate(d, start=1):
        index[u] = c
        pi.append(u)
    w = GraphDatabase(d.alphabet, range(1, len(pi)))
    adj = w._adj
    indeg = w._indeg
    for u, lists in d._adj.items():
        out = adj[index[u]]
        for x, row in lists.items():
            mapped = {index[v]: None for v in row}
            out[x] = mapped
            for v in mapped:
                indeg[v] += 1
    w._arc_count = d.arc_count
    return w, pi


@dataclass(frozen=True)
class DegreeStats:
    max_degree: int
    avg_degree: Fraction
    node_count: int
    arc_count: int

    @property
    def degree_sum(self) -> int:
        return int(self.avg_degree * self.node_count)


def degree_stats(d: SigmaGraph) -> DegreeStats:
    degrees = [d.degree(u) for u in d]
    n = len(degrees)
    return DegreeStats(
        max_degree=max(degrees, default=0),
        avg_degree=Fraction(sum(degrees), n) if n else Fraction(0),
        node_count=n,
        arc_count=d.arc_count,
    )


# -- updates ------------------------------------------------------------------

INSERT_ARC = "insert-arc"
DELETE_ARC = "delete-arc"
ADD_NODE = "add-isolated-node"
DELETE_NODE = "delete-isolated-node"


@dataclass(frozen=True)
class Update:
    kind: str
    payload: tuple

    @classmethod
    def insert_arc(cls, u: Node, x: str, v: Node) -> "Update":
        return cls(INSERT_ARC, (u, x, v))

    @classmethod
    def delete_arc(cls, u: Node, x: str, v: Node) -> "Update":
        return cls(DELETE_ARC, (u, x, v))

    @classmethod
    def add_node(cls, u: Node) -> "Update":
        return cls(ADD_NODE, (u,))

    @classmethod
    def delete_node(cls, u: Node) -> "Update":
        return cls(DELETE_NODE, (u,))


def apply_update(d: GraphDatabase, upd: Update) -> GraphDatabase:
    """Apply one update in place and return *d*.

    Inserting an arc that already exists is rejected, so that every accepted
    update changes the arc set.
    """
    kind, p = upd.kind, upd.payload
    if kind == INSERT_ARC:
        u, x, v = p
        if not d.add_arc(u, x, v):
            raise UpdateError(f"arc {u!r} -{x}-> {v!r} already present")
    elif kind == DELETE_ARC:
        d.remove_arc(*p)
    elif kind == ADD_NODE:
        if not d.add_node(p[0]):
            raise UpdateError(f"node {p[0]!r} already present")
    elif kind == DELETE_NODE:
        d.remove_node(p[0])
    else:
        raise UpdateError(f"unknown update kind {kind!r}")
    return d


# -- edge-list text format ------------------------------------------------------


def load_edge_list(text: str) -> GraphDatabase:
    """Parse the line-oriented ``alphabet`` / ``node`` / ``edge`` format."""
    d: GraphDatabase | None = None
    edges: list[tuple[int, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        if head == "alphabet":
            if d is not None:
                raise GraphFormatError("duplicate alphabet header", lineno)
            try:
                d = GraphDatabase(rest)
            except AlphabetError as exc:
                raise GraphFormatError(str(exc), lineno) from None
            continue
        if d is None:
            raise GraphFormatError("expected 'alphabet' header first", lineno)
        if head == "node" and len(rest) == 1:
            if not d.add_node(rest[0]):
                raise GraphFormatError(f"node {rest[0]!r} declared twice", lineno)
        elif head == "edge" and len(rest) == 3:
            edges.append((lineno, *rest))
        else:
            raise GraphFormatError(f"malformed line {line!r}", lineno)
    if d is None:
        raise GraphFormatError("missing 'alphabet' header")
    for lineno, u, x, v in edges:
        if x not in d.alphabet:
            raise GraphFormatError(f"undeclared label {x!r}", lineno)
        for node in (u, v):
            if node not in d:
                raise GraphFormatError(f"edge references undeclared node {node!r}", lineno)
        d.add_arc(u, x, v)
    return d


def save_edge_list(d: SigmaGraph) -> str:
    lines = ["alphabet " + " ".join(d.alphabet)]
    lines.extend(f"node {u}" for u in d)
    lines.extend(f"edge {u} {x or '%'} {v}" for u, x, v in d.arcs())
    return "\n".join(lines) + "\n"


def format_pairs(pairs: Iterable[tuple[Node, Node]]) -> str:
    return "".join(f"{u}\t{v}\n" for u, v in pairs)


def parse_pairs(text: str) -> list[tuple[str, str]]:
    out = []
    for line in text.splitlines():
        if line.strip():
            u, v = line.split("\t")
            out.append((u, v))
    return out


# -- update scripts -------------------------------------------------------------

CHECKPOINT = "!enum"


def parse_update_script(text: str) -> list[Update | str]:
    """Lines ``+edge u x v``, ``-edge u x v``, ``+node u``, ``-node u`` and ``!enum``."""
    out: list[Update | str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        if head == CHECKPOINT and not rest:
            out.append(CHECKPOINT)
        elif head in ("+edge", "-edge") and len(rest) == 3:
            make = Update.insert_arc if head == "+edge" else Update.delete_arc
            out.append(make(*rest))
        elif head in ("+node", "-node") and len(rest) == 1:
            make = Update.add_node if head == "+node" else Update.delete_node
            out.append(make(rest[0]))
        else:
            raise GraphFormatError(f"malformed update {line!r}", lineno)
    return out


def format_update_script(items: Iterable[Update | str]) -> str:
    prefix = {INSERT_ARC: "+edge", DELETE_ARC: "-edge", ADD_NODE: "+node", DELETE_NODE: "-node"}
    lines = []
    for item in items:
        if item == CHECKPOINT:
            lines.append(CHECKPOINT)
        else:
            lines.append(" ".join([prefix[item.kind], *map(str, item.payload)]))
    return "\n".join(lines) + "\n"
