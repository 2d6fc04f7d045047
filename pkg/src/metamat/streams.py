"""Enumerating the substitutions that meta-substitutions stand for.

Every column of a meta-substitution unfolds to a sorted sequence, so its
``i``-th substitutions are non-decreasing in ``i`` under any lexicographic
variable order.  :class:`SubstStream` is the incremental priority queue over
``(sigma, i)`` pairs; :func:`drain` produces the same sequence in one shot as
arrays, which is what the join kernels consume.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import EmptyQueueError
from .store import INDEX_DTYPE, MetaSubstitution, MuMapping

LESS, EQUAL, GREATER = -1, 0, 1


class StepCounter:
    """Counts pairs consumed from substitution streams."""

    def __init__(self):
        self.steps = 0

    def add(self, n):
        self.steps += int(n)


def subst(sigma: MetaSubstitution, i: int, mu: MuMapping) -> dict:
    """The ``i``-th (1-based) plain substitution represented by ``sigma``."""
    if not 1 <= i <= sigma.length:
        raise IndexError(f"index {i} out of range for meta-substitution of "
                         f"length {sigma.length}")
    return {x: int(mu.unfold(a)[i - 1]) for x, a in sigma.map.items()}


def key_of(sigma, i, xs, mu) -> tuple:
    return tuple(int(mu.unfold(sigma.map[x])[i - 1]) for x in xs)


def compare(p, q, xs, mu) -> int:
    """Compare pairs ``(sigma, i)`` and ``(tau, j)`` lexicographically on ``xs``.

    An empty ``xs`` compares equal.
    """
    a = key_of(p[0], p[1], xs, mu)
    b = key_of(q[0], q[1], xs, mu)
    return LESS if a < b else GREATER if a > b else EQUAL


class SubstStream:
    """Priority queue of ``(sigma, i)`` pairs ordered on ``xs``.

    Ties are broken by the meta-substitution's creation number and then the
    index, so the order is total and reproducible.  Each entry keeps a cursor
    into the cached column unfoldings instead of recomputing positions.
    """

    def __init__(self, xs, pairs, mu: MuMapping, counter: StepCounter | None = None):
        self.xs = tuple(xs)
        self.mu = mu
        self.counter = counter
        self._heap = []
        for sigma, i in pairs:
            if not 1 <= i <= sigma.length:
                raise IndexError(f"pair index {i} outside 1..{sigma.length}")
            cols = [mu.unfold(sigma.map[x]) for x in self.xs]
            self._push(sigma, i, cols)

    def _push(self, sigma, i, cols):
        key = tuple(int(c[i - 1]) for c in cols)
        heapq.heappush(self._heap, (key, sigma.seq, i, sigma, cols))

    def __len__(self):
        return len(self._heap)

    def __bool__(self):
        return bool(self._heap)

    def peek(self):
        if not self._heap:
            raise EmptyQueueError("peek on an empty substitution stream")
        _, _, i, sigma, _ = self._heap[0]
        return sigma, i

    def peek_key(self) -> tuple:
        if not self._heap:
            raise EmptyQueueError("peek on an empty substitution stream")
        return self._heap[0][0]

    def next(self):
        if not self._heap:
            raise EmptyQueueError("next on an empty substitution stream")
        _, _, i, sigma, cols = heapq.heappop(self._heap)
        if i + 1 <= sigma.length:
            self._push(sigma, i + 1, cols)
        if self.counter is not None:
            self.counter.add(1)
        return sigma, i

    def __iter__(self):
        while self._heap:
            yield self.next()


def queue(xs, pairs, mu, counter=None) -> SubstStream:
    return SubstStream(xs, pairs, mu, counter)


def peek(q: SubstStream):
    return q.peek()


def next_pair(q: SubstStream):
    return q.next()


@dataclass
class Drained:
    """A fully drained stream as parallel arrays.

    ``rows[:, :nkeys]`` are the sort keys; the remaining columns are the
    values of the extra variables.  ``owner`` indexes into ``subs`` and
    ``pos`` is the 0-based index within that meta-substitution.
    """

    subs: list
    columns: tuple
    nkeys: int
    rows: np.ndarray
    owner: np.ndarray
    pos: np.ndarray

    @property
    def keys(self) -> np.ndarray:
        return np.ascontiguousarray(self.rows[:, : self.nkeys])

    def __len__(self):
        return len(self.owner)


def drain(subs, key_vars, mu: MuMapping, extra_vars=(), counter=None) -> Drained:
    """All pairs of ``subs`` in stream order, with the values of
    ``key_vars + extra_vars`` for each pair."""
    subs = list(subs)
    columns = tuple(key_vars) + tuple(extra_vars)
    ncol = len(columns)
    total = sum(s.length for s in subs)
    if total == 0:
        empty = np.zeros(0, dtype=INDEX_DTYPE)
        return Drained(subs, columns, len(key_vars),
                       np.zeros((0, ncol), dtype=INDEX_DTYPE), empty, empty)
    lengths = np.fromiter((s.length for s in subs), dtype=INDEX_DTYPE, count=len(subs))
    owner = np.repeat(np.arange(len(subs), dtype=INDEX_DTYPE), lengths)
    starts = np.cumsum(lengths) - lengths
    pos = np.arange(total, dtype=INDEX_DTYPE) - np.repeat(starts, lengths)
    rows = np.empty((total, ncol), dtype=INDEX_DTYPE)
    for c, x in enumerate(columns):
        rows[:, c] = np.concatenate([mu.unfold(s.map[x]) for s in subs])
    if len(subs) > 1:
        seqs = np.fromiter((s.seq for s in subs), dtype=INDEX_DTYPE, count=len(subs))
        sort_keys = [pos, seqs[owner]]
        sort_keys.extend(rows[:, c] for c in reversed(range(len(key_vars))))
        order = np.lexsort(sort_keys)
        rows, owner, pos = rows[order], owner[order], pos[order]
    if counter is not None:
        counter.add(total)
    return Drained(subs, columns, len(key_vars), rows, owner, pos)
