"""Plain-fact seminaive evaluation, used as the correctness oracle.

This module deliberately shares nothing with the meta-fact engine except the
parsed rule and fact types.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .ingest import Fact, Var


def _match_atom(atom, tuples_index, bindings):
    """Extend each binding in ``bindings`` with matches of ``atom``."""
    out = []
    for b in bindings:
        bound_pos = []
        key = []
        for p, t in enumerate(atom.terms):
            if isinstance(t, Var):
                if t in b:
                    bound_pos.append(p)
                    key.append(b[t])
            else:
                bound_pos.append(p)
                key.append(t)
        for args in tuples_index(atom.predicate, tuple(bound_pos), tuple(key)):
            nb = dict(b)
            ok = True
            for t, v in zip(atom.terms, args):
                if isinstance(t, Var):
                    seen = nb.get(t)
                    if seen is None:
                        nb[t] = v
                    elif seen != v:
                        ok = False
                        break
            if ok:
                out.append(nb)
    return out


class _Indexed:
    """Per-predicate tuple sets with lazily built position indexes."""

    def __init__(self, by_pred):
        self.by_pred = by_pred
        self._indexes = {}

    def __call__(self, predicate, positions, key):
        tuples = self.by_pred.get(predicate, ())
        if not positions:
            return tuples
        idx = self._indexes.get((predicate, positions))
        if idx is None:
            idx = defaultdict(list)
            for args in tuples:
                idx[tuple(args[p] for p in positions)].append(args)
            self._indexes[(predicate, positions)] = idx
        return idx.get(key, ())


def mat_reference(program, facts) -> set[Fact]:
    """Least set containing ``facts`` and closed under ``program``."""
    everything = defaultdict(set)
    for f in facts:
        everything[f.predicate].add(tuple(f.args))
    delta = defaultdict(set)
    for pred, ts in everything.items():
        delta[pred] = set(ts)
    for rule in program:
        if not rule.body:
            args = tuple(rule.head.terms)
            if args not in everything[rule.head.predicate]:
                everything[rule.head.predicate].add(args)
                delta[rule.head.predicate].add(args)
    rules = [r for r in program if r.body]
    while any(delta.values()):
        old = {p: everything[p] - delta.get(p, set()) for p in everything}
        views = {"old": _Indexed(old), "delta": _Indexed(delta),
                 "all": _Indexed(everything)}
        new = defaultdict(set)
        for rule in rules:
            for i, pivot in enumerate(rule.body):
                if not delta.get(pivot.predicate):
                    continue
                bindings = [{}]
                for j, atom in enumerate(rule.body):
                    which = "old" if j < i else "delta" if j == i else "all"
                    bindings = _match_atom(atom, views[which], bindings)
                    if not bindings:
                        break
                for b in bindings:
                    head = tuple(b[t] if isinstance(t, Var) else t
                                 for t in rule.head.terms)
                    new[rule.head.predicate].add(head)
        delta = defaultdict(set)
        for pred, ts in new.items():
            fresh = ts - everything[pred]
            if fresh:
                delta[pred] = fresh
                everything[pred] |= fresh
    return {Fact(p, args) for p, ts in everything.items() for args in ts}


@dataclass
class VerifyReport:
    equal: bool
    reference_count: int
    compressed_count: int
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    def summary(self, dictionary=None) -> str:
        if self.equal:
            return f"equal, {self.reference_count} facts"
        lines = [f"unequal: reference {self.reference_count} facts, "
                 f"compressed {self.compressed_count} facts"]

        def show(f):
            return f.decode(dictionary) if dictionary is not None else repr(f)

        lines += [f"  missing: {show(f)}" for f in self.missing]
        lines += [f"  extra:   {show(f)}" for f in self.extra]
        return "\n".join(lines)


def compare_fact_sets(reference: set, compressed: set, sample: int = 10) -> VerifyReport:
    missing = sorted(reference - compressed)
    extra = sorted(compressed - reference)
    return VerifyReport(not missing and not extra, len(reference), len(compressed),
                        missing[:sample], extra[:sample])


def verify(program, facts, sample: int = 10, max_rounds=None) -> VerifyReport:
    """Run both engines and compare their plain fact sets."""
    from .engine import materialise

    facts = list(facts)
    reference = mat_reference(program, facts)
    compressed = materialise(program, facts, max_rounds=max_rounds).expand()
    return compare_fact_sets(reference, compressed, sample)
