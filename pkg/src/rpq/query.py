"""Regular path queries: parsing, compilation to an NFA, and classification."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import AlphabetError, QuerySyntaxError
from .graph import EPSILON, SigmaGraph

# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    symbol: str


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Concat:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Alt:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Plus:
    child: "Regex"


Regex = Union[Lit, Eps, Concat, Alt, Plus]


def star(child: Regex) -> Regex:
    return Alt(Plus(child), Eps())


def children(node: Regex) -> tuple[Regex, ...]:
    if isinstance(node, (Concat, Alt)):
        return (node.left, node.right)
    if isinstance(node, Plus):
        return (node.child,)
    return ()


def ast_size(node: Regex) -> int:
    count, stack = 0, [node]
    while stack:
        n = stack.pop()
        count += 1
        stack.extend(children(n))
    return count


def symbols(node: Regex) -> list[str]:
    """Distinct literal symbols in order of first (left-to-right) occurrence."""
    seen: dict[str, None] = {}
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Lit):
            seen.setdefault(n.symbol)
        stack.extend(reversed(children(n)))
    return list(seen)


def to_string(node: Regex) -> str:
    """Render an AST back to query syntax (stars appear as ``(..)+|%``)."""

    def go(n: Regex, prec: int) -> str:
        # prec: 0 alternation, 1 concatenation, 2 postfix operand
        if isinstance(n, Lit):
            return n.symbol
        if isinstance(n, Eps):
            return "%"
        if isinstance(n, Plus):
            return go(n.child, 2) + "+"
        if isinstance(n, Concat):
            s = go(n.left, 1) + go(n.right, 2 if isinstance(n.right, Concat) else 1)
            return f"({s})" if prec > 1 else s
        s = go(n.left, 0) + "|" + go(n.right, 1)
        return f"({s})" if prec > 0 else s

    return go(node, 0)


def query_length(node: Regex) -> int:
    return len(to_string(node))


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, alphabet: Iterable[str] | None) -> None:
        self.tokens = [(i, c) for i, c in enumerate(text) if not c.isspace()]
        self.end = len(text)
        self.pos = 0
        self.alphabet = None if alphabet is None else set(alphabet)

    def peek(self) -> str | None:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else self.end

    def parse(self) -> Regex:
        if not self.tokens:
            raise QuerySyntaxError("empty query", 0)
        node = self.alternation()
        if self.pos < len(self.tokens):
            raise QuerySyntaxError(f"unexpected {self.peek()!r}", self.where())
        return node

    def alternation(self) -> Regex:
        node = self.concatenation()
        while self.peek() == "|":
            self.pos += 1
            node = Alt(node, self.concatenation())
        return node

    def concatenation(self) -> Regex:
        node = self.postfix()
        while self.peek() is not None and self.peek() not in "|)":
            node = Concat(node, self.postfix())
        return node

    def postfix(self) -> Regex:
        node = self.atom()
        while self.peek() in ("+", "*"):
            node = Plus(node) if self.peek() == "+" else star(node)
            self.pos += 1
        return node

    def atom(self) -> Regex:
        c, at = self.peek(), self.where()
        if c is None:
            raise QuerySyntaxError("unexpected end of query", at)
        if c == "(":
            self.pos += 1
            if self.peek() == ")":
                raise QuerySyntaxError("empty parentheses", self.where())
            node = self.alternation()
            if self.peek() != ")":
                raise QuerySyntaxError("expected ')'", self.where())
            self.pos += 1
            return node
        if c in "|+*)":
            raise QuerySyntaxError(f"unexpected {c!r}", at)
        self.pos += 1
        if c == "%":
            return Eps()
        if self.alphabet is not None and c not in self.alphabet:
            raise AlphabetError(f"symbol {c!r} at position {at} is not in the alphabet")
        return Lit(c)


def parse_rpq(text: str, alphabet: Iterable[str] | None = None) -> Regex:
    """Parse query syntax: ``|`` < juxtaposition < postfix ``+``/``*``; ``%`` is epsilon."""
    return _Parser(text, alphabet).parse()


# -- NFA ---------------------------------------------------------------------


@dataclass
class Nfa:
    graph: SigmaGraph
    start: int = 0
    final: int = 1

    @property
    def state_count(self) -> int:
        return len(self.graph)


def compile_nfa(ast: Regex, alphabet: Iterable[str] | None = None) -> Nfa:
    """Thompson-style construction with two states per AST node.

    AST node number k owns states 2k (entry) and 2k+1 (exit); the root is
    number 0, so the start state is 0 and the final state is 1.
    """
    letters = symbols(ast)
    if alphabet is None:
        alphabet = letters
    else:
        alphabet = list(alphabet)
        missing = [x for x in letters if x not in alphabet]
        if missing:
            raise AlphabetError(f"query uses symbols outside the alphabet: {''.join(missing)}")
    g = SigmaGraph(alphabet, range(2 * ast_size(ast)))
    counter = 1
    stack: list[tuple[Regex, int]] = [(ast, 0)]
    while stack:
        node, k = stack.pop()
        t1, t2 = 2 * k, 2 * k + 1
        if isinstance(node, Lit):
            g.add_arc(t1, node.symbol, t2)
        elif isinstance(node, Eps):
            g.add_arc(t1, EPSILON, t2)
        elif isinstance(node, Plus):
            c = counter
            counter += 1
            g.add_arc(t1, EPSILON, 2 * c)
            g.add_arc(2 * c + 1, EPSILON, t2)
            g.add_arc(t2, EPSILON, t1)
            stack.append((node.child, c))
        else:
            r, s = counter, counter + 1
            counter += 2
            r1, r2, s1, s2 = 2 * r, 2 * r + 1, 2 * s, 2 * s + 1
            if isinstance(node, Concat):
                g.add_arc(t1, EPSILON, r1)
                g.add_arc(r2, EPSILON, s1)
                g.add_arc(s2, EPSILON, t2)
            else:
                g.add_arc(t1, EPSILON, r1)
                g.add_arc(t1, EPSILON, s1)
                g.add_arc(r2, EPSILON, t2)
                g.add_arc(s2, EPSILON, t2)
            stack.append((node.right, s))
            stack.append((node.left, r))
    return Nfa(g)


def _eps_closure(m: Nfa, states: set[int]) -> set[int]:
    out = set(states)
    stack = list(states)
    while stack:
        p = stack.pop()
        for q in m.graph.succ(p, EPSILON):
            if q not in out:
                out.add(q)
                stack.append(q)
    return out


def nfa_accepts(m: Nfa, word: str) -> bool:
    current = _eps_closure(m, {m.start})
    for x in word:
        if x not in m.graph.alphabet:
            raise AlphabetError(f"symbol {x!r} is not in the automaton's alphabet")
        step = {q for p in current for q in m.graph.succ(p, x)}
        current = _eps_closure(m, step)
        if not current:
            return False
    return m.final in current


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class BT:
    """Transitive closure over a letter set; ``reflexive`` for the star form."""

    letters: tuple[str, ...]
    reflexive: bool
    ast: Regex = field(compare=False, repr=False)


@dataclass(frozen=True)
class SSingle:
    letters: tuple[str, ...]
    ast: Regex = field(compare=False, repr=False)


@dataclass(frozen=True)
class SDouble:
    first: tuple[str, ...]
    second: tuple[str, ...]
    ast: Regex = field(compare=False, repr=False)


@dataclass(frozen=True)
class Disjunction:
    members: tuple[Union[BT, SSingle, SDouble], ...]
    ast: Regex = field(compare=False, repr=False)


@dataclass(frozen=True)
class General:
    ast: Regex = field(compare=False, repr=False)


QueryClass = Union[BT, SSingle, SDouble, Disjunction, General]


def _letter_set(node: Regex) -> tuple[str, ...] | None:
    """Letters of an alternation made only of literals, else None."""
    out: dict[str, None] = {}
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Lit):
            out.setdefault(n.symbol)
        elif isinstance(n, Alt):
            stack.append(n.right)
            stack.append(n.left)
        else:
            return None
    return tuple(out)


def _star_operand(node: Regex) -> Regex | None:
    if isinstance(node, Alt):
        if isinstance(node.left, Plus) and isinstance(node.right, Eps):
            return node.left.child
        if isinstance(node.right, Plus) and isinstance(node.left, Eps):
            return node.right.child
    return None


def _simple_class(node: Regex) -> Union[BT, SSingle, SDouble, None]:
    if isinstance(node, Plus):
        letters = _letter_set(node.child)
        return BT(letters, False, node) if letters else None
    operand = _star_operand(node)
    if operand is not None:
        letters = _letter_set(operand)
        if letters:
            return BT(letters, True, node)
    letters = _letter_set(node)
    if letters:
        return SSingle(letters, node)
    if isinstance(node, Concat):
        first, second = _letter_set(node.left), _letter_set(node.right)
        if first and second:
            return SDouble(first, second, node)
    return None


def alternatives(node: Regex) -> list[Regex]:
    """Flatten the top-level alternation chain, keeping star units whole."""
    out: list[Regex] = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Alt) and _star_operand(n) is None:
            stack.append(n.right)
            stack.append(n.left)
        else:
            out.append(n)
    return out


def classify(ast: Regex) -> QueryClass:
    simple = _simple_class(ast)
    if simple is not None:
        return simple
    parts = alternatives(ast)
    if len(parts) > 1:
        members = [_simple_class(p) for p in parts]
        if all(m is not None for m in members):
            return Disjunction(tuple(members), ast)
    return General(ast)
