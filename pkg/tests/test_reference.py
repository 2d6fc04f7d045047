import pytest

from metamat import family
from metamat.ingest import Dictionary, Fact, Program, parse_program
from metamat.reference import mat_reference, verify


def test_running_example_facts():
    d, program, facts = family.build(1, 1)
    result = {f.decode(d) for f in mat_reference(program, facts)}
    assert len(result) == 8
    assert {"S(a2,d)", "P(a2,e1)", "S(a2,e1)"} <= result


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("m", range(1, 6))
def test_closed_form(n, m):
    _, program, facts = family.build(n, m)
    assert len(facts) == 3 * n + 2 * m
    assert len(mat_reference(program, facts)) == family.expected_size(n, m)


def test_empty_program():
    facts = [Fact("P", (1, 2)), Fact("R", (1,))]
    assert mat_reference(Program([]), facts) == set(facts)


def test_transitive_closure():
    d = Dictionary()
    program = parse_program("E(?x,?z) :- E(?x,?y), E(?y,?z) .", d)
    chain = [Fact("E", (i, i + 1)) for i in range(6)]
    assert len(mat_reference(program, chain)) == 6 * 7 // 2


def test_verify_running_example():
    d, program, facts = family.build(1, 1)
    report = verify(program, facts)
    assert report.equal and report.summary(d) == "equal, 8 facts"


def test_verify_empty_program():
    _, _, facts = family.build(2, 1)
    assert verify(Program([]), facts).summary() == f"equal, {len(facts)} facts"


def test_verify_reports_missing_round():
    d, program, facts = family.build(1, 1)
    report = verify(program, facts, max_rounds=2)
    assert not report.equal
    assert [f.decode(d) for f in report.missing] == ["S(a2,e1)"]
    assert report.extra == []
    assert "missing: S(a2,e1)" in report.summary(d)
