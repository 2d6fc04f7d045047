"""The synthetic family of datasets used throughout the tests and benchmarks.

For parameters ``n`` and ``m`` the explicit facts are ``P(a_i, d)`` for
``i <= 2n``, ``R(a_2i)`` for ``i <= n``, ``P(b_i, c_i)`` and ``T(d, e_i)`` for
``i <= m``, with the rules ``S(x,y) :- P(x,y), R(x)`` and
``P(x,z) :- S(x,y), T(y,z)``.  The materialisation adds ``n + 2nm`` facts.
"""

from __future__ import annotations

from .ingest import Dictionary, Fact, parse_program

RULES_TEXT = """\
S(?x,?y) :- P(?x,?y), R(?x) .
P(?x,?z) :- S(?x,?y), T(?y,?z) .
"""


def constant_names(n: int, m: int) -> list[str]:
    """Constants in their intended order a_1..a_2n, b, c, d, e."""
    return ([f"a{i}" for i in range(1, 2 * n + 1)]
            + [f"b{i}" for i in range(1, m + 1)]
            + [f"c{i}" for i in range(1, m + 1)]
            + ["d"]
            + [f"e{i}" for i in range(1, m + 1)])


def triples(n: int, m: int) -> list[tuple[str, str, str]]:
    out = [(f"a{i}", "P", "d") for i in range(1, 2 * n + 1)]
    out += [(f"a{2 * i}", "rdf:type", "R") for i in range(1, n + 1)]
    out += [(f"b{i}", "P", f"c{i}") for i in range(1, m + 1)]
    out += [("d", "T", f"e{i}") for i in range(1, m + 1)]
    return out


def ntriples_text(n: int, m: int) -> str:
    return "".join(f"<{s}> <{p}> <{o}> .\n" for s, p, o in triples(n, m))


def build(n: int, m: int, dictionary: Dictionary | None = None):
    """Return ``(dictionary, program, facts)`` with constants pre-registered
    in their intended order."""
    d = Dictionary(constant_names(n, m)) if dictionary is None else dictionary
    for name in constant_names(n, m):
        d.encode(name)
    facts = []
    for s, p, o in triples(n, m):
        if p == "rdf:type":
            facts.append(Fact(o, (d.encode(s),)))
        else:
            facts.append(Fact(p, (d.encode(s), d.encode(o))))
    program = parse_program(RULES_TEXT, d)
    return d, program, facts


def expected_size(n: int, m: int) -> int:
    explicit = 2 * n + n + 2 * m
    return explicit + n + 2 * n * m
