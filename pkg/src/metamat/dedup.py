"""Removing already-known and repeated facts from a batch of new meta-facts."""

from __future__ import annotations

from . import kernels
from .ingest import Atom, Var
from .joins import survivor_groups, shuffle_groups
from .store import MetaFact, MetaFactSet, MuMapping, evaluate
from .streams import drain


def _grouped(facts):
    if isinstance(facts, MetaFactSet):
        return {p: facts.view(p) for p in facts.predicates()}
    out: dict[str, list[MetaFact]] = {}
    for f in facts:
        out.setdefault(f.predicate, []).append(f)
    return out


def elim_dup(new, known: MetaFactSet, mu: MuMapping, counter=None) -> list[MetaFact]:
    """Meta-facts for exactly the distinct facts of ``new`` missing from ``known``.

    Both sides are streamed in sorted order and merged as an anti-join; runs
    of equal facts within ``new`` contribute their first member only.
    """
    delta: list[MetaFact] = []
    for predicate, facts in _grouped(new).items():
        arity = len(facts[0].args)
        xs = tuple(Var(f"x{k}") for k in range(arity))
        atom = Atom(predicate, xs)
        F = drain(evaluate(atom, facts), xs, mu, counter=counter)
        G = drain(evaluate(atom, known), xs, mu, counter=counter)
        mask = kernels.antijoin_mask(F.keys, G.keys)
        for sigma in shuffle_groups(survivor_groups(F, mask), mu):
            delta.append(MetaFact(predicate, tuple(sigma.map[x] for x in xs),
                                  sigma.length))
    return delta
