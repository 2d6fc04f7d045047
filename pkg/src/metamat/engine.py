"""Seminaive materialisation over meta-facts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .compression import compress_rows
from .dedup import elim_dup
from .ingest import Fact, Program, Var
from .joins import match, sjoin, xjoin
from .store import (INDEX_DTYPE, VIEW_ALL, VIEW_DELTA, VIEW_OLD, FactView,
                    MetaFact, MetaFactSet, MetaSubstitution, MuMapping)
from .streams import StepCounter

log = logging.getLogger(__name__)


@dataclass
class EngineStats:
    rounds: int = 0
    rule_applications: int = 0
    derived_meta_facts: int = 0
    counter: StepCounter = field(default_factory=StepCounter)

    @property
    def queue_steps(self) -> int:
        return self.counter.steps


@dataclass
class Materialisation:
    facts: MetaFactSet
    mu: MuMapping
    stats: EngineStats

    def expand(self) -> set[Fact]:
        return expand(self.facts, self.mu)

    def __len__(self):
        return len(self.facts)


def _sort_for_compression(rows: np.ndarray) -> np.ndarray:
    """Sort rows lexicographically, columns with fewer distinct values first."""
    n, k = rows.shape
    if n < 2 or k == 0:
        return rows
    distinct = [len(np.unique(rows[:, c])) for c in range(k)]
    priority = sorted(range(k), key=lambda c: (distinct[c], c))
    order = np.lexsort(tuple(rows[:, c] for c in reversed(priority)))
    return rows[order]


def _position_vars(arity):
    return tuple(Var(f"x{k}") for k in range(arity))


def compress_dataset(facts, mu: MuMapping, round_tag: int = 0) -> MetaFactSet:
    """Convert plain facts into meta-facts, predicate by predicate."""
    by_pred: dict[str, set] = {}
    for f in facts:
        by_pred.setdefault(f.predicate, set()).add(tuple(f.args))
    out = MetaFactSet()
    for predicate in sorted(by_pred):
        tuples = sorted(by_pred[predicate])
        arity = len(tuples[0])
        rows = np.array(tuples, dtype=INDEX_DTYPE).reshape(len(tuples), arity)
        xs = _position_vars(arity)
        for tau in compress_rows(xs, _sort_for_compression(rows), mu):
            out.add(MetaFact(predicate, tuple(tau.map[x] for x in xs), tau.length),
                    round_tag)
    return out


def _unit_rows(facts, mu):
    return np.array([[int(mu.unfold(a)[0]) for a in f.args] for f in facts],
                    dtype=INDEX_DTYPE).reshape(len(facts), len(facts[0].args))


def recompress_unit_facts(M: MetaFactSet, delta_tag: int, mu: MuMapping) -> int:
    """Merge length-one meta-facts of ``M``; returns how many were removed.

    Meta-facts tagged ``delta_tag`` and older ones are compressed separately
    so the seminaive delta keeps its meaning.  A partition is rewritten only
    when compression actually reduces its size.
    """
    removed = 0
    for predicate in M.predicates():
        tagged = M.tagged(predicate)
        units_new = [(f, t) for f, t in tagged if f.length == 1 and t == delta_tag]
        units_old = [(f, t) for f, t in tagged if f.length == 1 and t != delta_tag]
        changed = False
        kept = [(f, t) for f, t in tagged if f.length != 1]
        for part in (units_old, units_new):
            if len(part) < 2:
                kept.extend(part)
                continue
            facts = [f for f, _ in part]
            rows = _sort_for_compression(_unit_rows(facts, mu))
            arity = rows.shape[1]
            assign, groups = (np.zeros(len(rows), dtype=INDEX_DTYPE), 1) if arity == 0 \
                else kernels.greedy_compress(rows)
            if groups >= len(part):
                kept.extend(part)
                continue
            tag = max(t for _, t in part)
            xs = _position_vars(arity)
            for tau in compress_rows(xs, rows, mu, plan=(assign, groups)):
                kept.append((MetaFact(predicate, tuple(tau.map[x] for x in xs),
                                      tau.length), tag))
            removed += len(part) - groups
            changed = True
        if changed:
            M.replace(predicate, kept)
    return removed


def instantiate_head(head, sigma: MetaSubstitution, mu: MuMapping) -> MetaFact:
    args = []
    for t in head.terms:
        if isinstance(t, Var):
            args.append(sigma.map[t])
        else:
            args.append(mu.repeat(t, sigma.length, cached=True))
    return MetaFact(head.predicate, tuple(args), sigma.length)


def _ordered(variables, order):
    return [v for v in order if v in variables]


def evaluate_rule_body(rule, pivot, M, delta_tag, mu, counter=None):
    """Meta-substitutions for the body of ``rule`` with atom ``pivot``
    matched in the delta, earlier atoms in the older facts and later atoms
    in all facts.  ``pivot=None`` matches every atom in all of ``M``."""
    L = [MetaSubstitution({}, 1)]
    V: list[Var] = []
    for j, atom in enumerate(rule.body):
        if pivot is None:
            view = FactView(M, VIEW_ALL)
        elif j < pivot:
            view = FactView(M, VIEW_OLD, delta_tag)
        elif j == pivot:
            view = FactView(M, VIEW_DELTA, delta_tag)
        else:
            view = FactView(M, VIEW_ALL)
        R = match(atom, view, mu)
        atom_vars = atom.variables()
        if not V:
            L = R
        elif set(V) <= set(atom_vars):
            L = sjoin(L, R, V, mu, counter)
        elif set(atom_vars) <= set(V):
            L = sjoin(R, L, _ordered(atom_vars, V), mu, counter)
        else:
            L = xjoin(L, R, _ordered(atom_vars, V), mu, counter)
        V.extend(v for v in atom_vars if v not in V)
        if not L:
            break
    return L


def materialise(program: Program, facts, mu: MuMapping | None = None,
                max_rounds: int | None = None) -> Materialisation:
    """Compute a meta-fact representation of everything ``program`` derives
    from ``facts``.  ``max_rounds`` stops early (used for fault injection)."""
    mu = MuMapping() if mu is None else mu
    stats = EngineStats()
    M = compress_dataset(facts, mu, round_tag=0)
    delta_tag = 0
    pending = []
    for rule in program:
        if not rule.body:
            sigma = MetaSubstitution({}, 1)
            pending.append(instantiate_head(rule.head, sigma, mu))
    rules = [r for r in program if r.body]
    while True:
        if max_rounds is not None and stats.rounds >= max_rounds:
            break
        delta_preds = {f.predicate for f in M.view_tagged(delta_tag)}
        if not delta_preds and not pending:
            break
        stats.rounds += 1
        N = pending
        pending = []
        for rule in rules:
            for i, pivot_atom in enumerate(rule.body):
                if pivot_atom.predicate not in delta_preds:
                    continue
                stats.rule_applications += 1
                L = evaluate_rule_body(rule, i, M, delta_tag, mu, stats.counter)
                N.extend(instantiate_head(rule.head, sigma, mu) for sigma in L)
        delta = elim_dup(N, M, mu, stats.counter)
        delta_tag += 1
        for f in delta:
            M.add(f, delta_tag)
        stats.derived_meta_facts += len(delta)
        recompress_unit_facts(M, delta_tag, mu)
        log.debug("round %d: %d new meta-facts", stats.rounds, len(delta))
        if not delta:
            break
    return Materialisation(M, mu, stats)


def expand(M, mu: MuMapping) -> set[Fact]:
    """All plain facts represented by the meta-facts in ``M``."""
    out: set[Fact] = set()
    for f in M:
        if not f.args:
            out.add(Fact(f.predicate, ()))
            continue
        cols = [mu.unfold(a).tolist() for a in f.args]
        for row in zip(*cols):
            out.add(Fact(f.predicate, row))
    return out


def expand_multiset(M, mu: MuMapping) -> list[Fact]:
    out = []
    for f in M:
        if not f.args:
            out.extend([Fact(f.predicate, ())] * f.length)
            continue
        cols = [mu.unfold(a).tolist() for a in f.args]
        out.extend(Fact(f.predicate, row) for row in zip(*cols))
    return out
