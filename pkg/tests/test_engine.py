import pytest

from metamat import family
from metamat.engine import (compress_dataset, evaluate_rule_body, expand,
                            instantiate_head, materialise, recompress_unit_facts)
from metamat.ingest import Atom, Dictionary, Fact, Program, Var, parse_program
from metamat.reference import mat_reference
from metamat.store import MetaFact, MetaFactSet, MetaSubstitution, MuMapping

from randprog import random_instance

x, y = Var("x"), Var("y")


def named(d, fact):
    return fact.decode(d)


def test_compress_running_dataset(backend):
    d, _, facts = family.build(1, 1)
    mu = MuMapping()
    M = compress_dataset(facts, mu)
    shapes = sorted((f.predicate, f.length,
                     tuple(tuple(d.decode(c) for c in mu.unfold(a)) for a in f.args))
                    for f in M)
    assert shapes == [
        ("P", 1, (("b1",), ("c1",))),
        ("P", 2, (("a1", "a2"), ("d", "d"))),
        ("R", 1, (("a2",),)),
        ("T", 1, (("d",), ("e1",))),
    ]


def test_compress_empty_dataset():
    assert compress_dataset([], MuMapping()).is_empty()


def test_compress_unsorted_unary(backend):
    mu = MuMapping()
    (f,) = list(compress_dataset([Fact("Q", (1,)), Fact("Q", (3,)), Fact("Q", (2,))], mu))
    assert mu.unfold(f.args[0]).tolist() == [1, 2, 3]


def test_running_example_small(backend):
    d, program, facts = family.build(1, 1)
    result = materialise(program, facts)
    derived = {named(d, f) for f in result.expand()} - {named(d, f) for f in facts}
    assert derived == {"S(a2,d)", "P(a2,e1)", "S(a2,e1)"}
    assert result.stats.rounds == 4


def test_empty_program_keeps_dataset(backend):
    _, _, facts = family.build(2, 2)
    assert materialise(Program([]), facts).expand() == set(facts)


def test_copy_rule_derives_one_meta_fact(backend):
    d = Dictionary()
    program = parse_program("W(?x,?y) :- P(?x,?y) .", d)
    facts = [Fact("P", (d.encode(f"b{i}"), d.encode(f"c{i}"))) for i in range(1, 6)]
    result = materialise(program, facts)
    assert len(result.facts.view("W")) == 1
    assert result.stats.derived_meta_facts == 1


def test_body_free_rule(backend):
    d = Dictionary()
    program = parse_program("Q(c) :- .\nR(?x) :- Q(?x) .", d)
    c = d.lookup("c")
    assert materialise(program, []).expand() == {Fact("Q", (c,)), Fact("R", (c,))}


def unit(mu, *values):
    return MetaFact("S", tuple(mu.leaf([v]) for v in values), 1)


def test_recompress_same_round(backend):
    mu = MuMapping()
    M = MetaFactSet()
    M.add(unit(mu, 1, 5), 1)
    M.add(unit(mu, 2, 6), 1)
    assert recompress_unit_facts(M, 1, mu) == 1
    (f,) = M.view("S")
    assert f.length == 2 and expand(M, mu) == {Fact("S", (1, 5)), Fact("S", (2, 6))}
    assert M.tagged("S")[0][1] == 1


def test_recompress_no_units():
    mu = MuMapping()
    M = MetaFactSet()
    M.add(MetaFact("S", (mu.leaf([1, 2]),), 2), 0)
    before = M.tagged("S")
    assert recompress_unit_facts(M, 0, mu) == 0
    assert M.tagged("S") == before


def test_recompress_keeps_delta_separate(backend):
    mu = MuMapping()
    M = MetaFactSet()
    M.add(unit(mu, 1, 5), 0)
    M.add(unit(mu, 2, 6), 0)
    M.add(unit(mu, 3, 7), 1)
    M.add(unit(mu, 4, 8), 1)
    want = expand(M, mu)
    recompress_unit_facts(M, 1, mu)
    tagged = M.tagged("S")
    assert sorted((t, f.length) for f, t in tagged) == [(0, 2), (1, 2)]
    assert expand(M, mu) == want
    assert expand(M.view("S", "delta", 1), mu) == {Fact("S", (3, 7)), Fact("S", (4, 8))}


def test_head_projection_and_constants():
    mu = MuMapping()
    sigma = MetaSubstitution({x: mu.leaf([1, 2, 3]), y: mu.leaf([4, 4, 5])}, 3)
    f = instantiate_head(Atom("Q", (x, 9, x)), sigma, mu)
    assert f.length == 3 and f.args[0] == f.args[2] == sigma[x]
    assert mu.unfold(f.args[1]).tolist() == [9, 9, 9]
    g = instantiate_head(Atom("Q", (x, 9, x)), sigma, mu)
    assert g.args[1] == f.args[1]


@pytest.mark.parametrize("seed", range(40))
def test_matches_oracle_and_no_loss(seed, backend):
    _, program, facts = random_instance(seed)
    result = materialise(program, facts)
    expanded = result.expand()
    assert expanded == mat_reference(program, facts)
    for rule in program:
        if rule.body:
            for sigma in evaluate_rule_body(rule, None, result.facts, 0, result.mu):
                head = instantiate_head(rule.head, sigma, result.mu)
                assert expand([head], result.mu) <= expanded


def test_rounds_bounded(backend):
    _, program, facts = random_instance(3)
    result = materialise(program, facts)
    assert result.stats.rounds <= len(result.expand()) + 1
