"""Independent oracles and random instance generators shared by the tests."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product as cartesian

from hypothesis import strategies as st

from rpq.graph import GraphDatabase
from rpq.query import Alt, Concat, Eps, Lit, Plus, Regex, star


def d1() -> GraphDatabase:
    return GraphDatabase("abc", [1, 2, 3], [(1, "a", 2), (2, "b", 3), (2, "a", 3)])


@lru_cache(maxsize=None)
def in_language(node: Regex, word: str) -> bool:
    """Recursive membership straight from the semantics of each operator."""
    if isinstance(node, Lit):
        return word == node.symbol
    if isinstance(node, Eps):
        return word == ""
    if isinstance(node, Alt):
        return in_language(node.left, word) or in_language(node.right, word)
    if isinstance(node, Concat):
        return any(
            in_language(node.left, word[:k]) and in_language(node.right, word[k:])
            for k in range(len(word) + 1)
        )
    if word == "":
        return in_language(node.child, "")
    # a nonempty word in L(r+) splits into a nonempty L(r) piece and a rest in L(r+) or empty
    return any(
        in_language(node.child, word[:k]) and (k == len(word) or in_language(node, word[k:]))
        for k in range(1, len(word) + 1)
    )


def words(alphabet: str, max_len: int):
    for k in range(max_len + 1):
        for w in cartesian(alphabet, repeat=k):
            yield "".join(w)


def random_ast(rng: random.Random, alphabet: str, depth: int) -> Regex:
    if depth <= 1 or rng.random() < 0.25:
        return Eps() if rng.random() < 0.1 else Lit(rng.choice(alphabet))
    kind = rng.choice(["concat", "alt", "plus", "star"])
    if kind == "plus":
        return Plus(random_ast(rng, alphabet, depth - 1))
    if kind == "star":
        return star(random_ast(rng, alphabet, depth - 1))
    left, right = random_ast(rng, alphabet, depth - 1), random_ast(rng, alphabet, depth - 1)
    return Concat(left, right) if kind == "concat" else Alt(left, right)


def _letters(rng: random.Random, alphabet: str) -> str:
    k = rng.randint(1, len(alphabet))
    xs = rng.sample(alphabet, k)
    return xs[0] if k == 1 else "(" + "|".join(xs) + ")"


def random_restricted_query(rng: random.Random, alphabet: str) -> str:
    """A query from the restricted shapes: closure, one or two steps, or a union."""

    def member() -> str:
        shape = rng.choice(["plus", "star", "single", "double"])
        if shape == "plus":
            return _letters(rng, alphabet) + "+"
        if shape == "star":
            return _letters(rng, alphabet) + "*"
        if shape == "single":
            return _letters(rng, alphabet)
        return _letters(rng, alphabet) + _letters(rng, alphabet)

    return "|".join(member() for _ in range(rng.randint(1, 3)))


def random_db(rng: random.Random, alphabet: str, max_nodes: int = 10, max_arcs: int = 25) -> GraphDatabase:
    n = rng.randint(1, max_nodes)
    d = GraphDatabase(alphabet, range(1, n + 1))
    for _ in range(rng.randint(0, max_arcs)):
        d.add_arc(rng.randint(1, n), rng.choice(alphabet), rng.randint(1, n))
    return d


# -- hypothesis strategies --------------------------------------------------------


def ast_strategy(alphabet: str = "ab", depth: int = 4):
    leaves = st.one_of(st.sampled_from([Lit(x) for x in alphabet]), st.just(Eps()))

    def extend(children):
        return st.one_of(
            st.builds(Concat, children, children),
            st.builds(Alt, children, children),
            st.builds(Plus, children),
            children.map(star),
        )

    return st.recursive(leaves, extend, max_leaves=2 ** (depth - 1))


@st.composite
def db_strategy(draw, alphabet: str = "ab", max_nodes: int = 6, max_arcs: int = 12):
    n = draw(st.integers(1, max_nodes))
    arcs = draw(
        st.lists(
            st.tuples(st.integers(1, n), st.sampled_from(alphabet), st.integers(1, n)),
            max_size=max_arcs,
        )
    )
    return GraphDatabase(alphabet, range(1, n + 1), arcs)


def respects_order(pairs: list, order: str, db) -> bool:
    """Sorted is strict lexicographic by node position, semi-sorted only on the left."""
    position = {u: k for k, u in enumerate(db.nodes)}
    keys = [(position[u], position[v]) for u, v in pairs]
    if order == "sorted":
        return all(a < b for a, b in zip(keys, keys[1:]))
    if order == "semi-sorted":
        return all(a[0] <= b[0] for a, b in zip(keys, keys[1:]))
    return True
