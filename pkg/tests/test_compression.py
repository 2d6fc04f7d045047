import numpy as np
import pytest

from helpers import multiset, rows, variables
from metamat.compression import compress
from metamat.errors import DomainMismatchError
from metamat.store import MuMapping

x, y = variables("xy")
A1, A2, B1, B2, C1, C2 = range(6)


def test_sorted_pairs_pack_into_one(backend):
    mu = MuMapping()
    (tau,) = compress([{x: B1, y: C1}, {x: B2, y: C2}], mu)
    assert mu.unfold(tau[x]).tolist() == [B1, B2]
    assert mu.unfold(tau[y]).tolist() == [C1, C2]


def test_descending_tail_opens_new(backend):
    mu = MuMapping()
    out = compress([{x: A2}, {x: A1}], mu)
    assert len(out) == 2
    assert [mu.unfold(t[x]).tolist() for t in out] == [[A2], [A1]]


def test_empty_input():
    assert compress([], MuMapping()) == []


def test_domain_mismatch():
    with pytest.raises(DomainMismatchError):
        compress([{x: 1}, {y: 1}], MuMapping())


def test_equal_constants_extend_run(backend):
    mu = MuMapping()
    (tau,) = compress([{x: 4}, {x: 4}, {x: 4}, {x: 9}], mu)
    values, counts = mu.runs(tau[x])
    assert values.tolist() == [4, 9] and counts.tolist() == [3, 1]


def test_sorted_single_variable_gives_one(backend):
    rng = np.random.default_rng(0)
    for _ in range(50):
        vals = sorted(rng.integers(0, 20, size=rng.integers(1, 30)).tolist())
        mu = MuMapping()
        out = compress([{x: v} for v in vals], mu)
        assert len(out) == 1
        assert multiset(rows(out, mu)) == multiset([{x: v} for v in vals])
