"""Joins over meta-substitutions.

``sjoin`` filters one side by the other and then *shuffles* the survivors:
the leaves under each surviving column are split into kept and dropped
parts, so the result references the kept parts without copying them and
without changing any existing unfolding.  ``xjoin`` handles partially
overlapping variables by compressing each key group of the right-hand side
once and pairing it with every matching left-hand row.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .compression import compress_rows
from .ingest import Var
from .store import MetaSubstitution, MuMapping, evaluate
from .streams import drain


def shuffle(pairs, mu: MuMapping) -> list[MetaSubstitution]:
    """Re-represent the surviving pairs ``(rho, j)`` (``j`` 1-based).

    A meta-substitution whose every index survives is returned as is.
    """
    groups: dict[int, tuple[MetaSubstitution, list[int]]] = {}
    for rho, j in pairs:
        if not 1 <= j <= rho.length:
            raise IndexError(f"survivor index {j} outside 1..{rho.length}")
        groups.setdefault(id(rho), (rho, []))[1].append(j - 1)
    ordered = sorted(groups.values(), key=lambda g: g[0].seq)
    return shuffle_groups(
        [(rho, np.unique(np.asarray(xs, dtype=np.int64))) for rho, xs in ordered], mu)


def shuffle_groups(groups, mu: MuMapping) -> list[MetaSubstitution]:
    """``groups`` holds ``(rho, X)`` with ``X`` sorted, unique, 0-based."""
    out = []
    for rho, X in groups:
        if len(X) == 0:
            continue
        if len(X) == rho.length:
            out.append(rho)
            continue
        chosen: dict[int, int] = {}
        mapping = {}
        for x, node in rho.map.items():
            if node not in chosen:
                chosen[node] = _select(node, X, mu)
            mapping[x] = chosen[node]
        out.append(MetaSubstitution(mapping, len(X)))
    return out


def _select(node: int, X: np.ndarray, mu: MuMapping) -> int:
    """Meta-constant unfolding to the constants of ``node`` at indices ``X``.

    Every leaf below ``node`` that contributes some but not all of its
    constants is split in place into kept and dropped parts.
    """
    occurrences = mu.leaf_occurrences(node)
    if len(occurrences) == 1:
        leaf_masks = [np.zeros(mu.length(node), dtype=bool)]
        leaf_masks[0][X] = True
    else:
        values = [mu.unfold(leaf) for leaf in occurrences]
        flat = np.concatenate(values)
        # stable: equal constants are assigned to leaves in depth-first order
        perm = np.argsort(flat, kind="stable")
        keep = np.zeros(len(flat), dtype=bool)
        keep[perm[X]] = True
        bounds = np.cumsum([0] + [len(v) for v in values])
        leaf_masks = [keep[bounds[k]:bounds[k + 1]] for k in range(len(occurrences))]
    parts = []
    split_here = set()
    for leaf, mask in zip(occurrences, leaf_masks):
        kept = int(mask.sum())
        if kept == 0:
            continue
        if kept == len(mask):
            parts.append(leaf)
            continue
        values = mu.unfold(leaf)
        if leaf in split_here:
            # second occurrence of a leaf under one root: it cannot be
            # redefined twice, so the kept part is copied
            parts.append(mu.leaf(values[mask]))
            continue
        inside = mu.leaf(values[mask])
        outside = mu.leaf(values[~mask])
        mu.split_leaf(leaf, inside, outside)
        split_here.add(leaf)
        parts.append(inside)
    if len(parts) == 1:
        return parts[0]
    return mu.internal(parts, unfolding=mu.unfold(node)[X])


def survivor_groups(drained, mask):
    owner = drained.owner[mask]
    pos = drained.pos[mask]
    if len(owner) == 0:
        return []
    order = np.lexsort((pos, owner))
    owner, pos = owner[order], pos[order]
    cuts = np.flatnonzero(owner[1:] != owner[:-1]) + 1
    groups = []
    for o, X in zip(owner[np.concatenate(([0], cuts))], np.split(pos, cuts)):
        groups.append((drained.subs[o], X))
    groups.sort(key=lambda g: g[0].seq)
    return groups


def sjoin(L, R, xs, mu: MuMapping, counter=None) -> list[MetaSubstitution]:
    """Semi-join: the part of ``R`` that agrees on ``xs`` with some row of
    ``L``.  Every variable of ``L`` must be a variable of ``R``."""
    L, R = list(L), list(R)
    if not L or not R:
        return []
    F = drain(L, xs, mu, counter=counter)
    G = drain(R, xs, mu, counter=counter)
    if len(F) == 0 or len(G) == 0:
        return []
    mask = kernels.semijoin_mask(F.keys, G.keys)
    return shuffle_groups(survivor_groups(G, mask), mu)


def xjoin(L, R, xs, mu: MuMapping, counter=None) -> list[MetaSubstitution]:
    """Natural join of ``L`` and ``R`` on ``xs`` (which may be empty)."""
    L, R = list(L), list(R)
    if not L or not R:
        return []
    xs = tuple(xs)
    left_vars = L[0].vars
    right_extra = tuple(v for v in R[0].vars if v not in xs)
    left_extra = tuple(v for v in left_vars if v not in xs)
    F = drain(L, xs, mu, extra_vars=left_extra, counter=counter)
    G = drain(R, xs, mu, extra_vars=right_extra, counter=counter)
    col = {v: c for c, v in enumerate(F.columns)}
    left_cols = [col[v] for v in left_vars]
    out = []
    for f_lo, f_hi, g_lo, g_hi in kernels.join_groups(F.keys, G.keys).tolist():
        C = compress_rows(right_extra, G.rows[g_lo:g_hi, G.nkeys:], mu)
        for row in F.rows[f_lo:f_hi].tolist():
            for beta in C:
                mapping = dict(beta.map)
                for v, c in zip(left_vars, left_cols):
                    mapping[v] = mu.repeat(row[c], beta.length, cached=True)
                out.append(MetaSubstitution(mapping, beta.length))
    return out


def match(atom, facts, mu: MuMapping) -> list[MetaSubstitution]:
    """Match an atom that may repeat variables or contain constants.

    Plain atoms go straight to ``evaluate``.  Otherwise each position gets
    its own variable, the indices satisfying the equalities are collected
    and the matching part is shuffled out, bound to the atom's variables.
    """
    terms = atom.terms
    if all(isinstance(t, Var) for t in terms) and len(set(terms)) == len(terms):
        return evaluate(atom, facts)
    fresh = tuple(Var(f"#{p}") for p in range(len(terms)))
    first_pos: dict[Var, int] = {}
    for p, t in enumerate(terms):
        if isinstance(t, Var):
            first_pos.setdefault(t, p)
    keep_vars = list(first_pos)
    renamed = type(atom)(atom.predicate, fresh)
    groups = []
    for rho in evaluate(renamed, facts):
        mask = None
        for p, t in enumerate(terms):
            node = rho.map[fresh[p]]
            if isinstance(t, Var):
                q = first_pos[t]
                if q == p or rho.map[fresh[q]] == node:
                    continue
                test = mu.unfold(node) == mu.unfold(rho.map[fresh[q]])
            else:
                test = mu.unfold(node) == t
            mask = test if mask is None else (mask & test)
        X = np.arange(rho.length) if mask is None else np.flatnonzero(mask)
        if len(X):
            projected = MetaSubstitution(
                {v: rho.map[fresh[first_pos[v]]] for v in keep_vars}, rho.length)
            groups.append((projected, X))
    if not keep_vars:
        return [MetaSubstitution({}, 1)] if groups else []
    return shuffle_groups(groups, mu)
