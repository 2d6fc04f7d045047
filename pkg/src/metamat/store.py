"""Meta-constants, the mapping that defines them, and meta-facts.

A meta-constant is a node in a shared forest.  Leaves hold a run-length
encoded, sorted run of constants; internal nodes hold a sequence of child
meta-constants.  The *unfolding* of a node is the sorted merge of all
constants below it, so the children of an internal node may interleave.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import UnknownMetaConstantError

INDEX_DTYPE = np.int64

_EMPTY = np.zeros(0, dtype=INDEX_DTYPE)
_EMPTY.flags.writeable = False


def run_length_encode(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Collapse adjacent equal values into ``(values, counts)`` runs."""
    values = np.asarray(values, dtype=INDEX_DTYPE)
    if values.size == 0:
        return _EMPTY, _EMPTY
    starts = np.flatnonzero(np.concatenate(([True], values[1:] != values[:-1])))
    counts = np.diff(np.append(starts, values.size))
    return values[starts], counts.astype(INDEX_DTYPE)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class MuMapping:
    """Storage for meta-constants.

    Every node caches its unfolding length, its tail (largest constant) and,
    lazily, its unfolded constant array.  Unfoldings never change once a node
    is complete: the only in-place mutation, :meth:`split_leaf`, replaces a
    leaf by two children whose merge is the old leaf.
    """

    def __init__(self):
        self._leaf: list[bool] = []
        self._payload: list = []
        self._length: list[int] = []
        self._tail: list[int] = []
        self._unfold: list = []
        self._repeat_cache: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self._leaf)

    def __contains__(self, node):
        return isinstance(node, (int, np.integer)) and 0 <= node < len(self._leaf)

    def _check(self, node):
        if not (0 <= node < len(self._leaf)):
            raise UnknownMetaConstantError(node)

    # -- construction ----------------------------------------------------

    def _new(self, is_leaf, payload, length, tail, unfolding=None) -> int:
        node = len(self._leaf)
        self._leaf.append(is_leaf)
        self._payload.append(payload)
        self._length.append(length)
        self._tail.append(tail)
        self._unfold.append(unfolding)
        return node

    def leaf(self, values) -> int:
        """New leaf holding ``values``, which must already be sorted."""
        values = np.asarray(values, dtype=INDEX_DTYPE)
        if values.size == 0:
            raise ValueError("a leaf must hold at least one constant")
        if values.size > 1 and np.any(values[1:] < values[:-1]):
            raise ValueError("leaf constants must be sorted")
        runs = run_length_encode(values)
        return self._new(True, runs, int(values.size), int(values[-1]),
                         _frozen(values.copy()))

    def leaf_from_runs(self, constants, counts) -> int:
        constants = np.asarray(constants, dtype=INDEX_DTYPE)
        counts = np.asarray(counts, dtype=INDEX_DTYPE)
        return self.leaf(np.repeat(constants, counts))

    def repeat(self, constant: int, count: int, *, cached=False) -> int:
        """Leaf ``constant * count`` stored as a single run."""
        if cached:
            key = (int(constant), int(count))
            node = self._repeat_cache.get(key)
            if node is not None:
                return node
        runs = (np.array([constant], dtype=INDEX_DTYPE),
                np.array([count], dtype=INDEX_DTYPE))
        node = self._new(True, runs, int(count), int(constant))
        if cached:
            self._repeat_cache[key] = node
        return node

    def internal(self, children, unfolding=None) -> int:
        """New internal node over ``children``; ``unfolding`` may be supplied
        when the caller already knows it."""
        children = tuple(int(c) for c in children)
        if not children:
            raise ValueError("an internal node needs children")
        for c in children:
            self._check(c)
        length = sum(self._length[c] for c in children)
        tail = max(self._tail[c] for c in children)
        if unfolding is not None:
            unfolding = _frozen(np.asarray(unfolding, dtype=INDEX_DTYPE))
        return self._new(False, children, length, tail, unfolding)

    def split_leaf(self, node: int, inside: int, outside: int) -> None:
        """Redefine leaf ``node`` as the internal node ``inside.outside``.

        The caller guarantees that the two parts partition the leaf's
        constants, so the cached unfolding stays valid.
        """
        assert self._leaf[node]
        assert self._length[inside] + self._length[outside] == self._length[node]
        self._leaf[node] = False
        self._payload[node] = (inside, outside)

    # -- queries ---------------------------------------------------------

    def is_leaf(self, node) -> bool:
        self._check(node)
        return self._leaf[node]

    def length(self, node) -> int:
        return self._length[node]

    def tail(self, node) -> int:
        return self._tail[node]

    def runs(self, node) -> tuple[np.ndarray, np.ndarray]:
        if not self._leaf[node]:
            raise ValueError(f"meta-constant {node} is not a leaf")
        return self._payload[node]

    def children(self, node) -> tuple:
        if self._leaf[node]:
            return ()
        return self._payload[node]

    def unfold(self, node) -> np.ndarray:
        """Sorted constants represented by ``node`` as a read-only array."""
        cached = self._unfold[node] if 0 <= node < len(self._unfold) else None
        if cached is not None:
            return cached
        self._check(node)
        if self._leaf[node]:
            values, counts = self._payload[node]
            arr = np.repeat(values, counts)
        else:
            parts = [self.unfold(c) for c in self._payload[node]]
            arr = np.sort(np.concatenate(parts), kind="stable")
        self._unfold[node] = _frozen(arr)
        return arr

    def iter_unfold(self, node) -> Iterator[int]:
        return iter(self.unfold(node).tolist())

    def index_at(self, node, i: int) -> int:
        """The ``i``-th constant (1-based) of the unfolding of ``node``."""
        self._check(node)
        if not 1 <= i <= self._length[node]:
            raise IndexError(f"index {i} out of range for meta-constant {node} "
                             f"of length {self._length[node]}")
        return int(self.unfold(node)[i - 1])

    def leaf_occurrences(self, node) -> list[int]:
        """Leaves below ``node`` in depth-first order, with repetitions."""
        out = []
        stack = [node]
        while stack:
            n = stack.pop()
            if self._leaf[n]:
                out.append(n)
            else:
                stack.extend(reversed(self._payload[n]))
        return out

    def reachable(self, roots: Iterable[int]) -> set[int]:
        seen = set()
        stack = list(roots)
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            if not self._leaf[n]:
                stack.extend(self._payload[n])
        return seen

    def depth(self, node, _memo=None) -> int:
        memo = {} if _memo is None else _memo
        # iterative post-order so deep chains do not hit the recursion limit
        stack = [(node, False)]
        while stack:
            n, done = stack.pop()
            if n in memo:
                continue
            if self._leaf[n]:
                memo[n] = 1
            elif done:
                memo[n] = 1 + max(memo[c] for c in self._payload[n])
            else:
                stack.append((n, True))
                stack.extend((c, False) for c in self._payload[n] if c not in memo)
        return memo[node]

    def encoding_size(self, node) -> int:
        """Symbols needed to write down the mapping entry for ``node``."""
        payload = self._payload[node]
        entries = len(payload[0]) if self._leaf[node] else len(payload)
        return 1 + 2 * entries


class MetaFact(NamedTuple):
    predicate: str
    args: tuple
    length: int


_SEQ = itertools.count()


class MetaSubstitution:
    """Map from variables to meta-constants of one common unfolding length.

    ``length`` is stored explicitly so that a meta-substitution with an
    empty domain can still stand for one (empty) substitution.
    """

    __slots__ = ("map", "length", "seq")

    def __init__(self, mapping, length: int):
        self.map = dict(mapping)
        self.length = int(length)
        self.seq = next(_SEQ)

    @property
    def vars(self) -> tuple:
        return tuple(self.map)

    def __getitem__(self, var):
        return self.map[var]

    def __contains__(self, var):
        return var in self.map

    def __len__(self):
        return self.length

    def restrict(self, variables) -> "MetaSubstitution":
        return MetaSubstitution({v: self.map[v] for v in variables}, self.length)

    def __repr__(self):
        inner = ", ".join(f"{v!r}->{n}" for v, n in self.map.items())
        return f"<MetaSubstitution {{{inner}}} len={self.length}>"


VIEW_ALL, VIEW_OLD, VIEW_DELTA = "all", "old", "delta"


class MetaFactSet:
    """Meta-facts grouped by predicate, each tagged with the round it entered.

    ``view(pred, VIEW_DELTA, r)`` selects meta-facts tagged ``r``,
    ``VIEW_OLD`` those tagged below ``r`` and ``VIEW_ALL`` everything.
    """

    def __init__(self):
        self._by_pred: dict[str, list[tuple[MetaFact, int]]] = {}

    def add(self, fact: MetaFact, round_tag: int = 0) -> None:
        bucket = self._by_pred.setdefault(fact.predicate, [])
        if bucket and bucket[-1][1] > round_tag:
            raise ValueError("round tags must be added in non-decreasing order")
        bucket.append((fact, round_tag))

    def predicates(self) -> list[str]:
        return [p for p, b in self._by_pred.items() if b]

    def view(self, predicate, which=VIEW_ALL, round_tag=None) -> list[MetaFact]:
        bucket = self._by_pred.get(predicate, ())
        if which == VIEW_ALL:
            return [f for f, _ in bucket]
        if which == VIEW_DELTA:
            return [f for f, t in bucket if t == round_tag]
        if which == VIEW_OLD:
            return [f for f, t in bucket if t < round_tag]
        raise ValueError(which)

    def view_tagged(self, round_tag) -> list[MetaFact]:
        return [f for b in self._by_pred.values() for f, t in b if t == round_tag]

    def tagged(self, predicate) -> list[tuple[MetaFact, int]]:
        return list(self._by_pred.get(predicate, ()))

    def replace(self, predicate, tagged_facts) -> None:
        """Swap in a new list of ``(fact, tag)`` pairs for ``predicate``."""
        ordered = sorted(tagged_facts, key=lambda ft: ft[1])
        if ordered:
            self._by_pred[predicate] = ordered
        else:
            self._by_pred.pop(predicate, None)

    def __iter__(self) -> Iterator[MetaFact]:
        for bucket in self._by_pred.values():
            for f, _ in bucket:
                yield f

    def __len__(self):
        return sum(len(b) for b in self._by_pred.values())

    def is_empty(self) -> bool:
        return not any(self._by_pred.values())


class FactView:
    """Read-only selection of a :class:`MetaFactSet` used by ``evaluate``."""

    def __init__(self, facts: MetaFactSet, which=VIEW_ALL, round_tag=None):
        self.facts = facts
        self.which = which
        self.round_tag = round_tag

    def get(self, predicate) -> list[MetaFact]:
        return self.facts.view(predicate, self.which, self.round_tag)


def evaluate(atom, facts):
    """Match an atom with distinct variables and no constants.

    ``facts`` is either a meta-fact container (a :class:`MetaFactSet`,
    :class:`FactView` or a plain list of :class:`MetaFact`) yielding
    :class:`MetaSubstitution` objects, or a plain dataset of ``Fact`` tuples,
    yielding ``dict`` substitutions.
    """
    predicate, terms = atom.predicate, atom.terms
    if len(set(terms)) != len(terms):
        raise ValueError("evaluate() needs an atom without repeated variables")
    if isinstance(facts, FactView):
        candidates = facts.get(predicate)
    elif isinstance(facts, MetaFactSet):
        candidates = facts.view(predicate)
    else:
        candidates = [f for f in facts if f.predicate == predicate]
    out = []
    for f in candidates:
        if len(f.args) != len(terms):
            continue
        if isinstance(f, MetaFact):
            out.append(MetaSubstitution(zip(terms, f.args), f.length))
        else:
            out.append(dict(zip(terms, f.args)))
    return out
