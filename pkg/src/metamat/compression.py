"""Greedy packing of plain substitutions into meta-substitutions."""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DomainMismatchError
from .store import INDEX_DTYPE, MetaSubstitution, MuMapping


def compress(substitutions, mu: MuMapping) -> list[MetaSubstitution]:
    """Pack plain substitutions (dicts over one domain), in the given order.

    Each substitution is appended to the first meta-substitution built so far
    whose column tails it does not undercut, otherwise it starts a new one.
    Every column therefore unfolds to a sorted sequence.
    """
    substitutions = list(substitutions)
    if not substitutions:
        return []
    variables = tuple(substitutions[0])
    domain = set(variables)
    for s in substitutions:
        if set(s) != domain:
            raise DomainMismatchError(
                f"substitution over {sorted(map(repr, s))} does not match "
                f"domain {sorted(map(repr, domain))}")
    rows = np.array([[s[x] for x in variables] for s in substitutions],
                    dtype=INDEX_DTYPE).reshape(len(substitutions), len(variables))
    return compress_rows(variables, rows, mu)


def compress_rows(variables, rows: np.ndarray, mu: MuMapping,
                  plan=None) -> list[MetaSubstitution]:
    """Array form of :func:`compress`: row ``r`` binds ``variables`` to
    ``rows[r]``.  ``plan`` is a precomputed ``(assignment, groups)``."""
    variables = tuple(variables)
    n = len(rows)
    if n == 0:
        return []
    rows = np.ascontiguousarray(rows, dtype=INDEX_DTYPE)
    if plan is not None:
        assign, groups = plan
    elif n == 1:
        assign, groups = np.zeros(1, dtype=INDEX_DTYPE), 1
    else:
        assign, groups = kernels.greedy_compress(rows)
    if groups == 1:
        blocks = [rows]
    else:
        order = np.argsort(assign, kind="stable")
        bounds = np.searchsorted(assign[order], np.arange(groups + 1))
        sorted_rows = rows[order]
        blocks = [sorted_rows[bounds[g]:bounds[g + 1]] for g in range(groups)]
    out = []
    for block in blocks:
        mapping = {x: mu.leaf(block[:, c]) for c, x in enumerate(variables)}
        out.append(MetaSubstitution(mapping, len(block)))
    return out
