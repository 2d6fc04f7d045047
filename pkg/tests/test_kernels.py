import random

import numpy as np
import pytest

from metamat import kernels
from metamat.kernels import _pykernels


def sorted_keys(rng, n, k, pool):
    rows = sorted(tuple(rng.randrange(pool) for _ in range(k)) for _ in range(n))
    return np.array(rows, dtype=np.int64).reshape(n, k)


def brute_semijoin(F, G):
    keys = {tuple(r) for r in F.tolist()}
    return np.array([tuple(r) in keys for r in G.tolist()], dtype=bool)


def brute_antijoin(F, G):
    known = {tuple(r) for r in G.tolist()}
    out, seen = [], set()
    for r in map(tuple, F.tolist()):
        out.append(r not in known and r not in seen)
        seen.add(r)
    return np.array(out, dtype=bool)


def brute_groups(F, G):
    fs, gs = [tuple(r) for r in F.tolist()], [tuple(r) for r in G.tolist()]
    out = []
    for key in sorted(set(fs) & set(gs)):
        fi = [i for i, r in enumerate(fs) if r == key]
        gi = [i for i, r in enumerate(gs) if r == key]
        out.append((fi[0], fi[-1] + 1, gi[0], gi[-1] + 1))
    return out


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_merge_kernels_against_brute_force(backend, k):
    rng = random.Random(k)
    for _ in range(100):
        F = sorted_keys(rng, rng.randint(0, 15), k, 4)
        G = sorted_keys(rng, rng.randint(0, 15), k, 4)
        assert kernels.semijoin_mask(F, G).tolist() == brute_semijoin(F, G).tolist()
        assert kernels.antijoin_mask(F, G).tolist() == brute_antijoin(F, G).tolist()
        assert [tuple(r) for r in kernels.join_groups(F, G).tolist()] == brute_groups(F, G)


def test_greedy_compress(backend):
    rng = random.Random(1)
    for _ in range(200):
        k = rng.randint(1, 3)
        rows = np.array([[rng.randrange(5) for _ in range(k)]
                         for _ in range(rng.randint(1, 20))], dtype=np.int64)
        assign, groups = kernels.greedy_compress(rows)
        ref_assign, ref_groups = _pykernels.greedy_compress(rows)
        assert groups == ref_groups and assign.tolist() == ref_assign.tolist()
        for g in range(groups):
            block = rows[assign == g]
            assert np.all(block[1:] >= block[:-1])


def test_greedy_compress_tail_test():
    # (2) then (1): the tail 2 is not below 1, so a second group opens
    assign, groups = kernels.greedy_compress(np.array([[2], [1]], dtype=np.int64))
    assert groups == 2 and assign.tolist() == [0, 1]


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
