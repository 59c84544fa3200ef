"""Semi-sorted enumerators for label-restricted closures, one- and two-step
queries, and unions of those."""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import AlphabetError, UnsupportedQueryClass
from .graph import GraphDatabase, well_form
from .meter import SEMI_SORTED, Enumerator, ListEnumerator
from .query import BT, Disjunction, General, Regex, SDouble, SSingle, classify, parse_rpq


def _well_formed(d: GraphDatabase) -> tuple[GraphDatabase, list]:
    if d.is_well_formed():
        return d, [None, *d]
    return well_form(d)


def _check_labels(d: GraphDatabase, labels: Iterable[str]) -> tuple[str, ...]:
    labels = tuple(dict.fromkeys(labels))
    for x in labels:
        if x not in d.alphabet:
            raise AlphabetError(f"label {x!r} not in alphabet {''.join(d.alphabet)!r}")
    return labels


class ClosureEnumerator(Enumerator):
    """Reflexive or plain transitive closure over a label subset.

    Each row runs a BFS in which a node is emitted as soon as it is dequeued
    and only then is its neighbourhood scanned, so consecutive outputs of a
    row are separated by a single neighbourhood scan.
    """

    order = SEMI_SORTED

    def __init__(self, d: GraphDatabase, labels: Iterable[str], reflexive: bool, base=None) -> None:
        labels = _check_labels(d, labels)
        wd, pi = base if base is not None else _well_formed(d)
        super().__init__(d, pi)
        self.labels = labels
        self.reflexive = reflexive
        n = len(wd)
        # restricted adjacency, with the label lists of a node kept apart
        self._lists = [()] + [
            tuple(row for x in labels if (row := wd.out_lists(u).get(x))) for u in range(1, n + 1)
        ]
        self._rows = list(range(1, n + 1)) if reflexive else [u for u in range(1, n + 1) if self._lists[u]]
        self._n = n

    def _run(self) -> Iterator[tuple[int, int]]:
        meter, lists, reflexive = self.meter, self._lists, self.reflexive
        stamp = [0] * (self._n + 1)
        queue: list[int] = []
        for i in self._rows:
            meter.steps += 1
            queue.clear()
            head = 0
            if reflexive:
                stamp[i] = i
                queue.append(i)
                meter.steps += 2
            else:
                for row in lists[i]:
                    meter.steps += len(row)
                    for v in row:
                        if stamp[v] != i:
                            stamp[v] = i
                            queue.append(v)
                            meter.steps += 1
            while head < len(queue):
                v = queue[head]
                head += 1
                meter.steps += 1
                yield i, v
                for row in lists[v]:
                    meter.steps += len(row)
                    for w in row:
                        if stamp[w] != i:
                            stamp[w] = i
                            queue.append(w)
                            meter.steps += 1


def enum_bt(d: GraphDatabase, labels: Iterable[str], reflexive: bool) -> ClosureEnumerator:
    return ClosureEnumerator(d, labels, reflexive)


def enum_s_single(d: GraphDatabase, labels: Iterable[str], base=None) -> ListEnumerator:
    """All pairs joined by one arc with a label from ``labels``, grouped by source."""
    labels = _check_labels(d, labels)
    wd, pi = base if base is not None else _well_formed(d)
    pairs: list[tuple[int, int]] = []
    for u in range(1, len(wd) + 1):
        lists = wd.out_lists(u)
        succ: dict[int, None] = {}
        for x in labels:
            row = lists.get(x)
            if row:
                succ.update(row)
        pairs.extend((u, v) for v in succ)
    e = ListEnumerator(d, pi, pairs, order=SEMI_SORTED)
    e.prep_steps = wd.size + len(pairs)
    return e


class TwoStepEnumerator(Enumerator):
    """Pairs joined by an ``xs``-arc followed by a ``ys``-arc.

    Preprocessing trims the three-layer product: middle nodes without an
    incoming ``xs``-arc or outgoing ``ys``-arc disappear, then sources left
    without middle neighbours.  Per source, newly seen targets are queued and
    one is released after a full middle-neighbourhood scan once ``max_degree``
    steps have passed since the previous output; the rest drain at the end.
    """

    order = SEMI_SORTED

    def __init__(self, d: GraphDatabase, xs: Iterable[str], ys: Iterable[str], base=None) -> None:
        xs, ys = _check_labels(d, xs), _check_labels(d, ys)
        wd, pi = base if base is not None else _well_formed(d)
        super().__init__(d, pi)
        n = len(wd)
        self._n = n
        steps = 0
        has_in = bytearray(n + 1)
        for u in range(1, n + 1):
            lists = wd.out_lists(u)
            for x in xs:
                for v in lists.get(x, ()):
                    has_in[v] = 1
                    steps += 1
        second: list[list[int]] = [[] for _ in range(n + 1)]
        for v in range(1, n + 1):
            if has_in[v]:
                lists = wd.out_lists(v)
                succ: dict[int, None] = {}
                for y in ys:
                    row = lists.get(y)
                    if row:
                        succ.update(row)
                        steps += len(row)
                second[v] = list(succ)
        first: list[list[int]] = [[] for _ in range(n + 1)]
        for u in range(1, n + 1):
            lists = wd.out_lists(u)
            mids: dict[int, None] = {}
            for x in xs:
                for v in lists.get(x, ()):
                    steps += 1
                    if second[v]:
                        mids[v] = None
            first[u] = list(mids)
        self._first, self._second = first, second
        self._sources = [u for u in range(1, n + 1) if first[u]]
        self.max_degree = max((wd.degree(u) for u in wd), default=0)
        self.prep_steps = steps + 3 * n

    def _run(self) -> Iterator[tuple[int, int]]:
        meter, first, second = self.meter, self._first, self._second
        threshold = max(1, self.max_degree)
        queued = [0] * (self._n + 1)  # phase stamp: target has entered Q
        produced = [0] * (self._n + 1)  # phase stamp: target was emitted
        queue: list[int] = []
        for i in self._sources:
            meter.steps += 1
            queue.clear()
            head = 0
            last = meter.steps
            mids = first[i]
            meter.steps += len(mids)
            for w in mids:
                row = second[w]
                for v in row:
                    meter.steps += 1
                    if queued[v] != i:
                        queued[v] = i
                        queue.append(v)
                        meter.steps += 1
                if meter.steps - last >= threshold and head < len(queue):
                    v = queue[head]
                    head += 1
                    produced[v] = i
                    meter.steps += 2
                    yield i, v
                    last = meter.steps
            while head < len(queue):
                v = queue[head]
                head += 1
                produced[v] = i
                meter.steps += 2
                yield i, v


def enum_s_double(d: GraphDatabase, xs: Iterable[str], ys: Iterable[str]) -> TwoStepEnumerator:
    return TwoStepEnumerator(d, xs, ys)


class PhaseMerger(Enumerator):
    """Duplicate-free, semi-sorted union of semi-sorted sub-enumerators.

    The subs advance in lockstep within a phase (a common left node).  Fresh
    right nodes collect in a pending set ``X`` and one of them is emitted per
    round; ``Y`` remembers this phase's outputs through phase stamps so it
    never has to be cleared.
    """

    order = SEMI_SORTED

    def __init__(self, subs: Sequence[Enumerator], n: int | None = None) -> None:
        if not subs:
            raise ValueError("need at least one sub-enumerator")
        first = subs[0]
        super().__init__(first._db, first._pi)
        self._version = first._version
        self.subs = list(subs)
        if n is None:
            n = len(first._pi) - 1 if first._pi is not None else len(first._db)
        self._n = n
        for s in self.subs:
            self.meter.adopt(s.meter)
        self.empty_emissions = 0  # rounds that reached emission with X empty mid-phase

    def check_fresh(self) -> None:
        super().check_fresh()
        for s in self.subs:
            s.check_fresh()

    def _run(self) -> Iterator[tuple[int, int]]:
        meter, subs = self.meter, self.subs
        m, sentinel = len(subs), self._n + 1
        left = [0] * m
        right = [0] * m
        pending_flag = bytearray(sentinel + 1)
        pending: list[int] = []
        emitted = [0] * (sentinel + 1)  # Y with phase stamps
        c = 0
        meter.steps += 2 * m
        while True:
            for k in range(m):
                meter.steps += 1
                if left[k] == c:
                    pair = subs[k].next_raw()
                    if pair is None:
                        left[k] = right[k] = sentinel
                    else:
                        left[k], right[k] = pair
            low = min(left)
            meter.steps += m
            if c < low:
                while pending:
                    v = pending.pop()
                    pending_flag[v] = 0
                    meter.steps += 1
                    yield c, v
                c = low
            if c == sentinel:
                return
            for k in range(m):
                meter.steps += 1
                v = right[k]
                if left[k] == c and emitted[v] != c and not pending_flag[v]:
                    pending_flag[v] = 1
                    pending.append(v)
                    meter.steps += 1
            if not pending:
                self.empty_emissions += 1
                continue
            v = pending.pop()
            pending_flag[v] = 0
            emitted[v] = c
            meter.steps += 2
            yield c, v


def enum_disjunction(subs: Sequence[Enumerator]) -> PhaseMerger:
    return PhaseMerger(subs)


def _member_enumerator(d: GraphDatabase, member, base) -> Enumerator:
    if isinstance(member, BT):
        return ClosureEnumerator(d, member.letters, member.reflexive, base)
    if isinstance(member, SSingle):
        return enum_s_single(d, member.letters, base)
    return TwoStepEnumerator(d, member.first, member.second, base)


def enum_restricted(d: GraphDatabase, q: str | Regex) -> Enumerator:
    """Dispatch on the query class; general queries are rejected."""
    ast = parse_rpq(q, d.alphabet) if isinstance(q, str) else q
    cls = classify(ast)
    if isinstance(cls, General):
        raise UnsupportedQueryClass(
            "query is not a restricted closure, one- or two-step query, or a union of those; "
            "use the baseline or sublinear enumerator"
        )
    base = _well_formed(d)
    if isinstance(cls, Disjunction):
        return PhaseMerger([_member_enumerator(d, m, base) for m in cls.members], len(base[0]))
    return _member_enumerator(d, cls, base)
