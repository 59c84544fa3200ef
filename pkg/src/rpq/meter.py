"""Step counting and the pull-based enumerator protocol.

Cost model shared by every enumerator: one step per adjacency entry
visited, per array cell read or written, and per queue push or pop;
operations on an ordered buffer of capacity K cost ceil(log2(K + 1)).
"""
from __future__ import annotations

import math
from typing import Hashable, Iterator, Sequence

from .errors import StaleStateError
from .graph import SigmaGraph

SORTED = "sorted"
SEMI_SORTED = "semi-sorted"
UNORDERED = "unordered"


def tree_cost(capacity: int) -> int:
    return max(1, math.ceil(math.log2(capacity + 1)))


class DelayMeter:
    """Step counter that records the gaps between consecutive outputs."""

    __slots__ = ("steps", "children", "outputs", "first_gap", "max_gap", "last_gap", "_mark", "finished")

    def __init__(self) -> None:
        self.steps = 0
        self.children: list[DelayMeter] = []
        self.outputs = 0
        self.first_gap = 0
        self.max_gap = 0
        self.last_gap = 0
        self._mark = 0
        self.finished = False

    @property
    def total(self) -> int:
        return self.steps + sum(c.total for c in self.children)

    def adopt(self, child: "DelayMeter") -> None:
        self.children.append(child)

    def mark_output(self) -> None:
        now = self.total
        gap = now - self._mark
        if self.outputs == 0:
            self.first_gap = gap
        elif gap > self.max_gap:
            self.max_gap = gap
        self.outputs += 1
        self._mark = now

    def finish(self) -> None:
        if not self.finished:
            self.finished = True
            self.last_gap = self.total - self._mark
            if self.outputs == 0:
                self.first_gap = self.last_gap

    @property
    def worst_gap(self) -> int:
        """Largest gap including the ones before the first and after the last output."""
        return max(self.first_gap, self.max_gap, self.last_gap)

    def report(self) -> dict[str, int]:
        return {
            "outputs": self.outputs,
            "first_gap": self.first_gap,
            "max_gap": self.max_gap,
            "last_gap": self.last_gap,
            "total_steps": self.total,
        }


class Enumerator:
    """Iterator over node pairs with a delay meter and an order tag.

    Subclasses implement :meth:`_run`, a generator of ``(i, j)`` pairs over
    well-formed indices that adds its work to ``self.meter.steps``.  Pulling
    after the watched database was modified raises :class:`StaleStateError`.
    """

    order = SORTED

    def __init__(self, db: SigmaGraph | None, pi: Sequence[Hashable] | None) -> None:
        self.meter = DelayMeter()
        self._db = db
        self._version = db.version if db is not None else 0
        self._pi = pi
        self._gen: Iterator[tuple[int, int]] | None = None
        self._done = False

    def _run(self) -> Iterator[tuple[int, int]]:
        raise NotImplementedError

    def check_fresh(self) -> None:
        if self._db is not None and self._db.version != self._version:
            raise StaleStateError("database changed after the enumerator was created")

    def next_raw(self) -> tuple[int, int] | None:
        """Next pair in well-formed indices, or None when exhausted."""
        self.check_fresh()
        if self._done:
            return None
        if self._gen is None:
            self._gen = self._run()
        pair = next(self._gen, None)
        if pair is None:
            self._done = True
            self.meter.finish()
            return None
        self.meter.mark_output()
        return pair

    def __iter__(self) -> "Enumerator":
        return self

    def __next__(self) -> tuple[Hashable, Hashable]:
        pair = self.next_raw()
        if pair is None:
            raise StopIteration
        if self._pi is None:
            return pair
        return self._pi[pair[0]], self._pi[pair[1]]

    @property
    def exhausted(self) -> bool:
        return self._done


class ListEnumerator(Enumerator):
    """Constant-delay emission of a precomputed pair list."""

    def __init__(self, db, pi, pairs: Sequence[tuple[int, int]], order: str = UNORDERED) -> None:
        super().__init__(db, pi)
        self.order = order
        self._pairs = pairs

    def _run(self) -> Iterator[tuple[int, int]]:
        meter = self.meter
        for pair in self._pairs:
            meter.steps += 1
            yield pair
        meter.steps += 1
