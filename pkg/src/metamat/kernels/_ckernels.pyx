# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled merge kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport cython
from libc.stdint cimport int64_t


cdef inline int cmp_rows(const int64_t[:, ::1] a, Py_ssize_t i,
                         const int64_t[:, ::1] b, Py_ssize_t j,
                         Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t c
    for c in range(k):
        if a[i, c] < b[j, c]:
            return -1
        if a[i, c] > b[j, c]:
            return 1
    return 0


def _prep(keys):
    arr = np.ascontiguousarray(keys, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("key matrix must be two-dimensional")
    return arr


def semijoin_mask(fkeys, gkeys):
    cdef const int64_t[:, ::1] F = _prep(fkeys)
    cdef const int64_t[:, ::1] G = _prep(gkeys)
    cdef Py_ssize_t nf = F.shape[0], ng = G.shape[0], k = F.shape[1]
    out = np.zeros(ng, dtype=np.uint8)
    cdef unsigned char[::1] mask = out
    cdef Py_ssize_t i = 0, j = 0
    cdef int c
    with nogil:
        while i < nf and j < ng:
            c = cmp_rows(F, i, G, j, k)
            if c < 0:
                i += 1
            else:
                if c == 0:
                    mask[j] = 1
                j += 1
    return out.view(bool)


def antijoin_mask(fkeys, gkeys):
    cdef const int64_t[:, ::1] F = _prep(fkeys)
    cdef const int64_t[:, ::1] G = _prep(gkeys)
    cdef Py_ssize_t nf = F.shape[0], ng = G.shape[0], k = F.shape[1]
    out = np.zeros(nf, dtype=np.uint8)
    cdef unsigned char[::1] mask = out
    cdef Py_ssize_t i = 0, j = 0, cur
    with nogil:
        while i < nf:
            cur = i
            while j < ng and cmp_rows(G, j, F, cur, k) < 0:
                j += 1
            if j == ng or cmp_rows(G, j, F, cur, k) != 0:
                mask[cur] = 1
            i += 1
            while i < nf and cmp_rows(F, i, F, cur, k) == 0:
                i += 1
    return out.view(bool)


def join_groups(fkeys, gkeys):
    cdef const int64_t[:, ::1] F = _prep(fkeys)
    cdef const int64_t[:, ::1] G = _prep(gkeys)
    cdef Py_ssize_t nf = F.shape[0], ng = G.shape[0], k = F.shape[1]
    cdef Py_ssize_t cap = min(nf, ng)
    out = np.empty((cap, 4), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef Py_ssize_t i = 0, j = 0, i2, j2, n = 0
    cdef int c
    with nogil:
        while i < nf and j < ng:
            c = cmp_rows(F, i, G, j, k)
            if c < 0:
                i += 1
            elif c > 0:
                j += 1
            else:
                i2 = i + 1
                while i2 < nf and cmp_rows(F, i2, F, i, k) == 0:
                    i2 += 1
                j2 = j + 1
                while j2 < ng and cmp_rows(G, j2, G, j, k) == 0:
                    j2 += 1
                o[n, 0] = i
                o[n, 1] = i2
                o[n, 2] = j
                o[n, 3] = j2
                n += 1
                i = i2
                j = j2
    return out[:n].copy()


def greedy_compress(rows):
    cdef const int64_t[:, ::1] R = _prep(rows)
    cdef Py_ssize_t n = R.shape[0], k = R.shape[1]
    tails_arr = np.empty((max(n, 1), k), dtype=np.int64)
    cdef int64_t[:, ::1] tails = tails_arr
    assign_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] assign = assign_arr
    cdef Py_ssize_t r, t, c, ntails = 0
    cdef bint fits
    with nogil:
        for r in range(n):
            t = 0
            while t < ntails:
                fits = True
                for c in range(k):
                    if tails[t, c] > R[r, c]:
                        fits = False
                        break
                if fits:
                    break
                t += 1
            if t == ntails:
                ntails += 1
            for c in range(k):
                tails[t, c] = R[r, c]
            assign[r] = t
    return assign_arr, ntails
