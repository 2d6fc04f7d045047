from metamat.dedup import elim_dup
from metamat.engine import expand, expand_multiset
from metamat.ingest import Fact
from metamat.store import MetaFact, MetaFactSet, MuMapping
from metamat.streams import StepCounter

A1, A2, A3, A4, B1, C1, D, E1 = range(8)


def known_running(mu):
    M = MetaFactSet()
    M.add(MetaFact("P", (mu.leaf([A1, A2, A3, A4]), mu.repeat(D, 4)), 4))
    M.add(MetaFact("P", (mu.leaf([B1]), mu.leaf([C1])), 1))
    return M


def test_new_fact_survives(backend):
    mu = MuMapping()
    M = known_running(mu)
    N = [MetaFact("P", (mu.leaf([A2]), mu.leaf([E1])), 1)]
    delta = elim_dup(N, M, mu)
    assert expand(delta, mu) == {Fact("P", (A2, E1))}


def test_known_facts_removed(backend):
    mu = MuMapping()
    M = known_running(mu)
    N = [MetaFact("P", (mu.leaf([A2, A4]), mu.repeat(D, 2)), 2)]
    assert elim_dup(N, M, mu) == []


def test_duplicates_within_new(backend):
    mu = MuMapping()
    N = [MetaFact("P", (mu.leaf([A1]), mu.leaf([D])), 1),
         MetaFact("P", (mu.leaf([A1]), mu.leaf([D])), 1)]
    delta = elim_dup(N, MetaFactSet(), mu)
    assert expand_multiset(delta, mu) == [Fact("P", (A1, D))]


def test_partial_overlap_is_shuffled(backend):
    mu = MuMapping()
    M = known_running(mu)
    N = [MetaFact("P", (mu.leaf([A1, A2, B1]), mu.leaf([C1, D, D])), 3)]
    counter = StepCounter()
    delta = elim_dup(N, M, mu, counter)
    assert expand(delta, mu) == {Fact("P", (A1, C1)), Fact("P", (B1, D))}
    assert counter.steps == 3 + 5


def test_empty_new_batch():
    assert elim_dup([], MetaFactSet(), MuMapping()) == []
