"""Random graph families for benchmarks and delay measurements."""
from __future__ import annotations

import numpy as np

from .graph import GraphDatabase

FAMILIES = ("sparse-random", "dense-random", "bipartite", "bounded-degree")


def _db(n: int, alphabet: str) -> GraphDatabase:
    return GraphDatabase(alphabet, range(1, n + 1))


def sparse_random(n: int, avg_degree: float = 3.0, alphabet: str = "ab", seed: int = 0) -> GraphDatabase:
    """About ``avg_degree * n`` uniformly random labelled arcs."""
    rng = np.random.default_rng(seed)
    d = _db(n, alphabet)
    m = int(round(avg_degree * n))
    src = rng.integers(1, n + 1, m)
    dst = rng.integers(1, n + 1, m)
    lab = rng.integers(0, len(alphabet), m)
    for u, v, x in zip(src.tolist(), dst.tolist(), lab.tolist()):
        d.add_arc(u, alphabet[x], v)
    return d


def dense_random(n: int, p: float = 0.2, alphabet: str = "ab", seed: int = 0) -> GraphDatabase:
    """Each ordered pair of distinct nodes is an arc with probability ``p``, random label."""
    rng = np.random.default_rng(seed)
    d = _db(n, alphabet)
    hit = rng.random((n, n)) < p
    np.fill_diagonal(hit, False)
    labels = rng.integers(0, len(alphabet), (n, n))
    us, vs = np.nonzero(hit)
    for u, v in zip(us.tolist(), vs.tolist()):
        d.add_arc(u + 1, alphabet[labels[u, v]], v + 1)
    return d


def bipartite(n: int, p: float = 0.2, seed: int = 0) -> GraphDatabase:
    """Three layers of ``n`` nodes with random ``a``-arcs between consecutive layers."""
    rng = np.random.default_rng(seed)
    d = GraphDatabase("a", range(1, 3 * n + 1))
    for layer in (0, 1):
        hit = rng.random((n, n)) < p
        us, vs = np.nonzero(hit)
        for u, v in zip(us.tolist(), vs.tolist()):
            d.add_arc(layer * n + u + 1, "a", (layer + 1) * n + v + 1)
    return d


def bounded_degree(n: int, max_degree: int = 8, alphabet: str = "ab", seed: int = 0) -> GraphDatabase:
    """Every node gets ``max_degree`` distinct random successors (fewer if ``n`` is small)."""
    rng = np.random.default_rng(seed)
    d = _db(n, alphabet)
    k = min(max_degree, n)
    for u in range(1, n + 1):
        succ = rng.choice(n, size=k, replace=False)
        lab = rng.integers(0, len(alphabet), k)
        for v, x in zip(succ.tolist(), lab.tolist()):
            d.add_arc(u, alphabet[x], v + 1)
    return d


def make_family(name: str, n: int, seed: int = 0, **params) -> GraphDatabase:
    if name == "sparse-random":
        return sparse_random(n, seed=seed, **params)
    if name == "dense-random":
        return dense_random(n, seed=seed, **params)
    if name == "bipartite":
        return bipartite(n, seed=seed, **params)
    if name == "bounded-degree":
        return bounded_degree(n, seed=seed, **params)
    raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
