"""Database/query constructions encoding orthogonal vectors, triangle
detection, Boolean matrix multiplication and online matrix-vector products,
with decoders and brute-force solvers for the source problems."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Callable

from .enumeration import DynamicBaseline
from .evaluation import boole, check, count, eval_all
from .graph import CHECKPOINT, GraphDatabase, Update

KINDS = ("ov", "tri", "bmm", "sbmm", "ovcount", "omv", "tridyn")

# -- source instances ----------------------------------------------------------


@dataclass(frozen=True)
class OvInstance:
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        dims = {len(v) for v in self.A + self.B}
        if len(dims) > 1:
            raise ValueError("all vectors must have the same dimension")
        if not self.A or not self.B:
            raise ValueError("need at least one vector on each side")

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def d(self) -> int:
        return len(self.A[0])


@dataclass(frozen=True)
class BmmInstance:
    """Square Boolean matrices given by their 1-entries (1-based ``(row, col)``)."""

    n: int
    a: frozenset[tuple[int, int]]
    b: frozenset[tuple[int, int]]
    sparse: bool = False

    @classmethod
    def from_dense(cls, a: list[list[int]], b: list[list[int]], sparse: bool = False) -> "BmmInstance":
        n = len(a)
        if any(len(r) != n for r in a) or len(b) != n or any(len(r) != n for r in b):
            raise ValueError("matrices must be square and of equal size")

        def ones(m):
            return frozenset((i + 1, j + 1) for i, r in enumerate(m) for j, x in enumerate(r) if x)

        return cls(n, ones(a), ones(b), sparse)

    def dense(self, which: str) -> list[list[int]]:
        entries = self.a if which == "a" else self.b
        return [[int((i, j) in entries) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]


@dataclass(frozen=True)
class TriInstance:
    """Undirected simple graph on vertices ``1..n``; edges stored as ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def build(cls, n: int, edges) -> "TriInstance":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    def neighbours(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


@dataclass(frozen=True)
class OmvInstance:
    M: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.M)


# -- brute-force solvers -----------------------------------------------------------


def ov_brute(inst: OvInstance) -> bool:
    """True iff some a in A and b in B are orthogonal."""
    return any(all(x * y == 0 for x, y in zip(a, b)) for a in inst.A for b in inst.B)


def tri_vertices(inst: TriInstance) -> list[bool]:
    """Per vertex ``1..n``: does it lie on a triangle?"""
    on = [False] * (inst.n + 1)
    adj = inst.neighbours()
    for u, v, w in combinations(range(1, inst.n + 1), 3):
        if v in adj[u] and w in adj[v] and w in adj[u]:
            on[u] = on[v] = on[w] = True
    return on[1:]


def tri_brute(inst: TriInstance) -> bool:
    return any(tri_vertices(inst))


def bmm_brute(inst: BmmInstance) -> list[list[int]]:
    a, b, n = inst.dense("a"), inst.dense("b"), inst.n
    return [[int(any(a[i][k] and b[k][j] for k in range(n))) for j in range(n)] for i in range(n)]


def omv_brute(inst: OmvInstance) -> list[list[int]]:
    return [
        [int(any(row[j] and v[j] for j in range(inst.n))) for row in inst.M]
        for v in inst.vectors
    ]


# -- constructions -----------------------------------------------------------------


@dataclass
class ReductionInstance:
    """A generated database and query plus what is needed to read back the answer.

    ``pair`` is set for single-pair checks and ``script`` (updates interleaved
    with checkpoint markers) for the dynamic constructions.  ``decode`` maps
    the engine's raw answer to the source problem's answer.
    """

    kind: str
    db: GraphDatabase
    query: str
    decode: Callable[[Any], Any]
    pair: tuple[str, str] | None = None
    script: list = field(default_factory=list)


def ov_to_check(inst: OvInstance) -> ReductionInstance:
    d = inst.d
    db = GraphDatabase("01#", ["s", "t"])
    for i in range(1, inst.n + 1):
        for j in range(d + 1):
            db.add_node(f"v{i}_{j}")
    for i, a in enumerate(inst.A, start=1):
        for j in range(d):
            db.add_arc(f"v{i}_{j}", "0", f"v{i}_{j + 1}")
            if a[j] == 0:
                db.add_arc(f"v{i}_{j}", "1", f"v{i}_{j + 1}")
        db.add_arc("s", "#", f"v{i}_0")
        db.add_arc(f"v{i}_{d}", "#", "t")
    words = ["".join(map(str, b)) for b in inst.B]
    query = "#(" + "|".join(words) + ")#"
    return ReductionInstance("ov", db, query, decode=bool, pair=("s", "t"))


def tri_to_boole(inst: TriInstance) -> ReductionInstance:
    n = inst.n
    db = GraphDatabase("a#", ["s'", "t'"])
    for j in range(1, n + 1):
        db.add_node(f"s{j}")
        db.add_node(f"t{j}")
    for layer in range(4):
        for u in range(1, n + 1):
            db.add_node(f"x{u}_{layer}")
    adj = inst.neighbours()
    for layer in range(3):
        for u in range(1, n + 1):
            for v in sorted(adj[u]):
                db.add_arc(f"x{u}_{layer}", "a", f"x{v}_{layer + 1}")
    if n:
        db.add_arc("s'", "#", "s1")
        db.add_arc(f"t{n}", "#", "t'")
    for i in range(1, n):
        db.add_arc(f"s{i}", "a", f"s{i + 1}")
        db.add_arc(f"t{i}", "a", f"t{i + 1}")
    for i in range(1, n + 1):
        db.add_arc(f"s{i}", "a", f"x{i}_0")
        db.add_arc(f"x{i}_3", "a", f"t{i}")
    query = "#" + "a" * (n + 4) + "#"
    return ReductionInstance("tri", db, query, decode=bool)


def _layered(rows: int, mids: int, cols: int, a_entries, b_entries, nodes=None) -> GraphDatabase:
    """Three-layer database: ``r{i}`` -a-> ``m{k}`` for A[i,k]=1 and ``m{k}`` -a-> ``c{j}`` for B[k,j]=1."""
    db = GraphDatabase("a")
    if nodes is None:
        nodes = (
            [f"r{i}" for i in range(1, rows + 1)]
            + [f"m{k}" for k in range(1, mids + 1)]
            + [f"c{j}" for j in range(1, cols + 1)]
        )
    for u in nodes:
        db.add_node(u)
    for i, k in sorted(a_entries):
        db.add_arc(f"r{i}", "a", f"m{k}")
    for k, j in sorted(b_entries):
        db.add_arc(f"m{k}", "a", f"c{j}")
    return db


def _decode_matrix(n: int) -> Callable[[list], list[list[int]]]:
    def decode(pairs) -> list[list[int]]:
        out = [[0] * n for _ in range(n)]
        for u, v in pairs:
            out[int(u[1:]) - 1][int(v[1:]) - 1] = 1
        return out

    return decode


def bmm_to_eval(inst: BmmInstance) -> ReductionInstance:
    n = inst.n
    db = _layered(n, n, n, inst.a, inst.b)
    return ReductionInstance("bmm", db, "aa", decode=_decode_matrix(n))


def sbmm_to_eval(inst: BmmInstance) -> ReductionInstance:
    """Like :func:`bmm_to_eval` but a middle node needs a 1 in column k of A
    and in row k of B, and outer nodes need an arc to a surviving middle node."""
    mids = sorted({k for _, k in inst.a} & {k for k, _ in inst.b})
    keep = set(mids)
    a_entries = {(i, k) for i, k in inst.a if k in keep}
    b_entries = {(k, j) for k, j in inst.b if k in keep}
    rows = sorted({i for i, _ in a_entries})
    cols = sorted({j for _, j in b_entries})
    nodes = [f"r{i}" for i in rows] + [f"m{k}" for k in mids] + [f"c{j}" for j in cols]
    db = _layered(0, 0, 0, a_entries, b_entries, nodes)
    return ReductionInstance("sbmm", db, "aa", decode=_decode_matrix(inst.n))


def ov_to_count(inst: OvInstance) -> ReductionInstance:
    """Rows of the left matrix are A's vectors, columns of the right one B's."""
    n, d = inst.n, inst.d
    a_entries = {(i, k) for i, a in enumerate(inst.A, start=1) for k in range(1, d + 1) if a[k - 1]}
    b_entries = {(k, j) for j, b in enumerate(inst.B, start=1) for k in range(1, d + 1) if b[k - 1]}
    db = _layered(n, d, n, a_entries, b_entries)
    # an orthogonal pair exists iff some (row, column) pair is missing
    return ReductionInstance("ovcount", db, "aa", decode=lambda c: c < n * n)


def omv_to_dynamic_enum(inst: OmvInstance) -> ReductionInstance:
    n = inst.n
    script: list = []
    for i in range(1, n + 1):
        script += [Update.add_node(f"u{i}"), Update.add_node(f"v{i}")]
    script.append(Update.add_node("w"))
    for i, row in enumerate(inst.M, start=1):
        for j, x in enumerate(row, start=1):
            if x:
                script.append(Update.insert_arc(f"u{i}", "a", f"v{j}"))
    previous = [0] * n
    for vec in inst.vectors:
        for j in range(n):
            if previous[j] and not vec[j]:
                script.append(Update.delete_arc(f"v{j + 1}", "a", "w"))
            elif vec[j] and not previous[j]:
                script.append(Update.insert_arc(f"v{j + 1}", "a", "w"))
        script.append(CHECKPOINT)
        previous = list(vec)

    def decode(rounds: list[list]) -> list[list[int]]:
        out = []
        for pairs in rounds:
            vec = [0] * n
            for u, v in pairs:
                if v == "w" and u.startswith("u"):
                    vec[int(u[1:]) - 1] = 1
            out.append(vec)
        return out

    return ReductionInstance("omv", GraphDatabase("a"), "aa", decode=decode, script=script)


def tri_to_dynamic_enum(inst: TriInstance) -> ReductionInstance:
    n = inst.n
    db = GraphDatabase("a", ["s", "t"])
    for layer in range(4):
        for u in range(1, n + 1):
            db.add_node(f"x{u}_{layer}")
    adj = inst.neighbours()
    for layer in range(3):
        for u in range(1, n + 1):
            for v in sorted(adj[u]):
                db.add_arc(f"x{u}_{layer}", "a", f"x{v}_{layer + 1}")
    script: list = []
    for i in range(1, n + 1):
        if i > 1:
            script += [
                Update.delete_arc("s", "a", f"x{i - 1}_0"),
                Update.delete_arc(f"x{i - 1}_3", "a", "t"),
            ]
        script += [
            Update.insert_arc("s", "a", f"x{i}_0"),
            Update.insert_arc(f"x{i}_3", "a", "t"),
            CHECKPOINT,
        ]

    def decode(rounds: list[list]) -> list[bool]:
        return [bool(pairs) for pairs in rounds]

    return ReductionInstance("tridyn", db, "aaaaa", decode=decode, script=script)


# -- running the engine ----------------------------------------------------------------


def replay(db: GraphDatabase, query: str, script: list) -> list[list]:
    """Apply a script through the dynamic baseline, enumerating at each checkpoint."""
    state = DynamicBaseline(db, query)
    rounds = []
    for item in script:
        if item == CHECKPOINT:
            rounds.append(list(state.enumerate()))
        else:
            state.apply(item)
    return rounds


def run_engine(r: ReductionInstance) -> Any:
    """Raw engine answer for a construction (before decoding)."""
    if r.kind == "ov":
        return check(r.db, r.query, *r.pair)
    if r.kind == "tri":
        return boole(r.db, r.query)
    if r.kind in ("bmm", "sbmm"):
        return eval_all(r.db, r.query)
    if r.kind == "ovcount":
        return count(r.db, r.query)
    if r.kind in ("omv", "tridyn"):
        return replay(r.db, r.query, r.script)
    raise ValueError(f"unknown reduction kind {r.kind!r}")


def solve(r: ReductionInstance) -> Any:
    return r.decode(run_engine(r))


CONSTRUCT = {
    "ov": ov_to_check,
    "tri": tri_to_boole,
    "bmm": bmm_to_eval,
    "sbmm": sbmm_to_eval,
    "ovcount": ov_to_count,
    "omv": omv_to_dynamic_enum,
    "tridyn": tri_to_dynamic_enum,
}


def brute(kind: str, inst) -> Any:
    if kind in ("ov", "ovcount"):
        return ov_brute(inst)
    if kind == "tri":
        return tri_brute(inst)
    if kind in ("bmm", "sbmm"):
        return bmm_brute(inst)
    if kind == "omv":
        return omv_brute(inst)
    if kind == "tridyn":
        return tri_vertices(inst)
    raise ValueError(f"unknown reduction kind {kind!r}")


# -- random instances and serialization ------------------------------------------------


def _bits(rng: random.Random, k: int, p: float) -> tuple[int, ...]:
    return tuple(int(rng.random() < p) for _ in range(k))


def random_source(kind: str, n: int, d: int = 4, p: float = 0.5, seed: int = 0):
    rng = random.Random(seed)
    if kind in ("ov", "ovcount"):
        return OvInstance(tuple(_bits(rng, d, p) for _ in range(n)), tuple(_bits(rng, d, p) for _ in range(n)))
    if kind in ("tri", "tridyn"):
        return TriInstance.build(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])
    if kind in ("bmm", "sbmm"):
        a = [list(_bits(rng, n, p)) for _ in range(n)]
        b = [list(_bits(rng, n, p)) for _ in range(n)]
        return BmmInstance.from_dense(a, b, sparse=kind == "sbmm")
    if kind == "omv":
        return OmvInstance(tuple(_bits(rng, n, p) for _ in range(n)), tuple(_bits(rng, n, p) for _ in range(n)))
    raise ValueError(f"unknown reduction kind {kind!r}")


def source_to_json(inst) -> dict:
    if isinstance(inst, BmmInstance):
        return {"n": inst.n, "a": sorted(inst.a), "b": sorted(inst.b), "sparse": inst.sparse}
    if isinstance(inst, TriInstance):
        return {"n": inst.n, "edges": sorted(inst.edges)}
    return asdict(inst)


def source_from_json(kind: str, data: dict):
    if kind in ("ov", "ovcount"):
        return OvInstance(tuple(map(tuple, data["A"])), tuple(map(tuple, data["B"])))
    if kind in ("tri", "tridyn"):
        return TriInstance.build(data["n"], [tuple(e) for e in data["edges"]])
    if kind in ("bmm", "sbmm"):
        return BmmInstance(
            data["n"], frozenset(map(tuple, data["a"])), frozenset(map(tuple, data["b"])), data["sparse"]
        )
    if kind == "omv":
        return OmvInstance(tuple(map(tuple, data["M"])), tuple(map(tuple, data["vectors"])))
    raise ValueError(f"unknown reduction kind {kind!r}")
