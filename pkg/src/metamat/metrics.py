"""Representation-size measures for flat datasets and meta-fact stores.

A flat dataset costs one symbol per predicate plus one per argument.  A
meta-fact store additionally pays for the mapping: each reachable
meta-constant costs ``1 + 2 * entries``, where entries are run-length pairs
for leaves and children for internal nodes.
"""

from __future__ import annotations

from collections import Counter


def repsize_flat(facts) -> int:
    arity: dict[str, int] = {}
    count: Counter = Counter()
    for f in facts:
        arity[f.predicate] = len(f.args)
        count[f.predicate] += 1
    return sum(1 + arity[p] * m for p, m in count.items())


def reachable_nodes(M, mu) -> set[int]:
    return mu.reachable(a for f in M for a in f.args)


def repsize_mapping(mu, nodes=None) -> int:
    if nodes is None:
        nodes = range(len(mu))
    return sum(mu.encoding_size(n) for n in nodes)


def repsize_compressed(M, mu) -> int:
    facts = list(M)
    return repsize_flat(facts) + repsize_mapping(mu, reachable_nodes(facts, mu))


def mu_stats(mu, M) -> dict:
    nodes = reachable_nodes(list(M), mu)
    if not nodes:
        return {"avg_length": 0.0, "max_length": 0, "max_depth": 0}
    lengths = [mu.length(n) for n in nodes]
    memo: dict[int, int] = {}
    depth = max(mu.depth(n, memo) for n in nodes)
    return {
        "avg_length": sum(lengths) / len(lengths),
        "max_length": max(lengths),
        "max_depth": depth,
    }
