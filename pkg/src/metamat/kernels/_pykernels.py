"""Reference implementations of the merge kernels in plain Python.

All key matrices are ``(rows, k)`` integer arrays whose rows are sorted
lexicographically.  With ``k == 0`` every pair of rows compares equal.
"""

import numpy as np


def _rows(keys):
    return [tuple(r) for r in np.asarray(keys).tolist()]


def semijoin_mask(fkeys, gkeys):
    """Mark the rows of ``gkeys`` that equal some row of ``fkeys``."""
    F, G = _rows(fkeys), _rows(gkeys)
    nf, ng = len(F), len(G)
    mask = np.zeros(ng, dtype=bool)
    i = j = 0
    while i < nf and j < ng:
        f, g = F[i], G[j]
        if f < g:
            i += 1
        else:
            if f == g:
                mask[j] = True
            j += 1
    return mask


def antijoin_mask(fkeys, gkeys):
    """Mark the first row of every run of equal rows in ``fkeys`` that has
    no equal row in ``gkeys``."""
    F, G = _rows(fkeys), _rows(gkeys)
    nf, ng = len(F), len(G)
    mask = np.zeros(nf, dtype=bool)
    i = j = 0
    while i < nf:
        f = F[i]
        while j < ng and G[j] < f:
            j += 1
        if j == ng or G[j] != f:
            mask[i] = True
        i += 1
        while i < nf and F[i] == f:
            i += 1
    return mask


def join_groups(fkeys, gkeys):
    """Key groups present on both sides as rows ``(f_lo, f_hi, g_lo, g_hi)``."""
    F, G = _rows(fkeys), _rows(gkeys)
    nf, ng = len(F), len(G)
    out = []
    i = j = 0
    while i < nf and j < ng:
        f, g = F[i], G[j]
        if f < g:
            i += 1
        elif g < f:
            j += 1
        else:
            i2 = i + 1
            while i2 < nf and F[i2] == f:
                i2 += 1
            j2 = j + 1
            while j2 < ng and G[j2] == g:
                j2 += 1
            out.append((i, i2, j, j2))
            i, j = i2, j2
    return np.array(out, dtype=np.int64).reshape(len(out), 4)


def greedy_compress(rows):
    """Assign each row to the first column group whose tails it dominates.

    Returns ``(assignment, groups)``; rows assigned to one group form
    non-decreasing columns.
    """
    R = _rows(rows)
    tails = []
    assign = np.empty(len(R), dtype=np.int64)
    for n, row in enumerate(R):
        for t, tail in enumerate(tails):
            for a, b in zip(tail, row):
                if a > b:
                    break
            else:
                break
        else:
            t = len(tails)
            tails.append(row)
        tails[t] = row
        assign[n] = t
    return assign, len(tails)
