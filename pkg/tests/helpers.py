"""Builders and brute-force oracles shared by the kernel tests."""

import random
from collections import Counter

import numpy as np

from metamat.ingest import Var
from metamat.store import MetaSubstitution, MuMapping
from metamat.streams import subst


def check_mu(mu: MuMapping):
    """Assert every structural invariant of the mapping."""
    for node in range(len(mu)):
        unfolded = mu.unfold(node)
        assert len(unfolded) == mu.length(node)
        assert np.all(unfolded[1:] >= unfolded[:-1]), f"node {node} unsorted"
        assert unfolded[-1] == mu.tail(node)
        if mu.is_leaf(node):
            values, counts = mu.runs(node)
            assert np.all(counts >= 1)
            assert np.all(values[1:] > values[:-1])
            assert np.array_equal(np.repeat(values, counts), unfolded)
        else:
            kids = mu.children(node)
            assert sum(mu.length(c) for c in kids) == mu.length(node)
            merged = np.sort(np.concatenate([mu.unfold(c) for c in kids]))
            assert np.array_equal(merged, unfolded)
    # acyclic: a walk from every node terminates
    state = {}
    for root in range(len(mu)):
        stack = [(root, False)]
        while stack:
            n, done = stack.pop()
            if done:
                state[n] = 2
                continue
            if state.get(n) == 2:
                continue
            assert state.get(n) != 1, "cycle in mapping"
            state[n] = 1
            stack.append((n, True))
            stack.extend((c, False) for c in mu.children(n))


def random_node(mu: MuMapping, rng: random.Random, values, depth=0):
    """A meta-constant unfolding to ``values`` (sorted), with random shape."""
    values = list(values)
    if len(values) == 1 or depth >= 3 or rng.random() < 0.45:
        return mu.leaf(values)
    k = rng.randint(2, min(4, len(values)))
    owners = [rng.randrange(k) for _ in values]
    for part in range(k):
        # every part needs at least one constant
        if part not in owners:
            owners[rng.randrange(len(values))] = part
    parts = [[v for v, o in zip(values, owners) if o == p] for p in range(k)]
    parts = [p for p in parts if p]
    if len(parts) == 1:
        return mu.leaf(values)
    kids = [random_node(mu, rng, p, depth + 1) for p in parts]
    rng.shuffle(kids)
    return mu.internal(kids)


def random_column(rng, length, pool):
    return sorted(rng.randrange(pool) for _ in range(length))


def random_subs(mu, rng, variables, count, max_len=6, pool=8, share=None):
    """``count`` meta-substitutions over ``variables`` with random columns.

    ``share`` is a dict ``length -> [nodes]`` used to reuse existing nodes,
    which produces structure sharing between meta-substitutions.
    """
    out = []
    for _ in range(count):
        length = rng.randint(1, max_len)
        mapping = {}
        for x in variables:
            if share is not None and share.get(length) and rng.random() < 0.3:
                node = rng.choice(share[length])
            else:
                node = random_node(mu, rng, random_column(rng, length, pool))
                if share is not None:
                    share.setdefault(length, []).append(node)
            mapping[x] = node
        out.append(MetaSubstitution(mapping, length))
    return out


def rows(subs, mu, variables=None):
    """Expanded plain substitutions as a list of dicts."""
    out = []
    for s in subs:
        for i in range(1, s.length + 1):
            row = subst(s, i, mu)
            out.append(row if variables is None else {v: row[v] for v in variables})
    return out


def multiset(dict_rows):
    return Counter(frozenset(r.items()) for r in dict_rows)


def variables(names):
    return tuple(Var(n) for n in names)
