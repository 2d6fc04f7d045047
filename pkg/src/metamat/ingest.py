"""Reading RDF triples, plain facts and datalog rules.

Terms are dictionary-encoded into dense integer identifiers in order of first
registration, so the ordering of constants used by every other module is just
integer comparison.  Predicates live in their own namespace and are kept as
strings.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, TextIO, Union

from .errors import ArityConflictError, ParseError, SafetyError

RDF_TYPE_IRI = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDF_TYPE_FORMS = frozenset({RDF_TYPE_IRI, "rdf:type"})


class Dictionary:
    """Bijective map between term strings and consecutive integer ids."""

    def __init__(self, terms: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._terms: list[str] = []
        self.arities: dict[str, int] = {}
        for t in terms:
            self.encode(t)

    def encode(self, term: str) -> int:
        ident = self._ids.get(term)
        if ident is None:
            ident = len(self._terms)
            self._ids[term] = ident
            self._terms.append(term)
        return ident

    def lookup(self, term: str):
        return self._ids.get(term)

    def decode(self, ident: int) -> str:
        return self._terms[ident]

    def __len__(self):
        return len(self._terms)

    def __contains__(self, term):
        return term in self._ids

    @property
    def terms(self) -> list[str]:
        return list(self._terms)

    def register_predicate(self, predicate: str, arity: int, where=None) -> None:
        known = self.arities.setdefault(predicate, arity)
        if known != arity:
            loc = f" (line {where})" if where is not None else ""
            raise ArityConflictError(
                f"predicate {predicate} used with arity {arity}, "
                f"previously {known}{loc}"
            )


class Fact(NamedTuple):
    predicate: str
    args: tuple

    def decode(self, dictionary: Dictionary) -> str:
        return format_atom(self.predicate, [dictionary.decode(a) for a in self.args])


class Var(NamedTuple):
    name: str

    def __repr__(self):
        return "?" + self.name


Term = Union[int, Var]


class Atom(NamedTuple):
    predicate: str
    terms: tuple

    @property
    def arity(self) -> int:
        return len(self.terms)

    def variables(self) -> list[Var]:
        """Distinct variables in order of first occurrence."""
        seen = []
        for t in self.terms:
            if isinstance(t, Var) and t not in seen:
                seen.append(t)
        return seen

    def is_ground(self) -> bool:
        return not any(isinstance(t, Var) for t in self.terms)


@dataclass
class Rule:
    head: Atom
    body: list[Atom] = field(default_factory=list)

    def __post_init__(self):
        body_vars = {v for b in self.body for v in b.variables()}
        for v in self.head.variables():
            if v not in body_vars:
                raise SafetyError(repr(v), self.text())

    def body_variables(self) -> list[Var]:
        out = []
        for b in self.body:
            for v in b.variables():
                if v not in out:
                    out.append(v)
        return out

    def text(self, dictionary: Dictionary | None = None) -> str:
        def show(a):
            return format_atom(a.predicate, [_term_text(t, dictionary) for t in a.terms])

        body = ", ".join(show(b) for b in self.body)
        return f"{show(self.head)} :- {body} ."


@dataclass
class Program:
    rules: list[Rule] = field(default_factory=list)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


def _term_text(t, dictionary):
    if isinstance(t, Var):
        return repr(t)
    return dictionary.decode(t) if dictionary is not None else str(t)


def format_atom(predicate: str, terms) -> str:
    return f"{predicate}({','.join(terms)})"


def _as_lines(source) -> Iterator[str]:
    if isinstance(source, str):
        source = io.StringIO(source)
    for line in source:
        yield line.rstrip("\n").rstrip("\r")


_TRIPLE_TOKEN = re.compile(
    r'<[^>\s]*>'
    r'|"(?:[^"\\]|\\.)*"(?:@[A-Za-z0-9-]+|\^\^<[^>]*>)?'
    r'|\S+'
)
_ATOM_LINE = re.compile(r'^\s*[^\s(<"]+\(.*\)\s*\.?\s*(#.*)?$')


def _strip_iri(token: str) -> str:
    if token.startswith("<") and token.endswith(">"):
        return token[1:-1]
    return token


def parse_triples(source: Union[str, TextIO], dictionary: Dictionary) -> list[Fact]:
    """Parse N-Triples-style or whitespace-separated triples into facts.

    ``rdf:type`` triples become unary facts ``o(s)``; all others become
    binary facts ``p(s, o)``.  Lines written as atoms (``P(a,b) .``) are also
    accepted, which allows arbitrary arities and lets exported fact files be
    read back.  Duplicates are dropped; first-occurrence order is kept.
    """
    facts: list[Fact] = []
    seen: set[Fact] = set()
    for lineno, line in enumerate(_as_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if _ATOM_LINE.match(stripped):
            fact = _parse_fact_line(stripped, lineno, dictionary)
        else:
            fact = _parse_triple_line(stripped, lineno, dictionary)
        if fact not in seen:
            seen.add(fact)
            facts.append(fact)
    return facts


def _parse_triple_line(line: str, lineno: int, dictionary: Dictionary) -> Fact:
    tokens = _TRIPLE_TOKEN.findall(line)
    tsv = True
    if len(tokens) == 4 and tokens[3] == ".":
        tokens = tokens[:3]
        tsv = False
    elif len(tokens) == 3 and tokens[2].endswith(".") and len(tokens[2]) > 1 \
            and tokens[2][-2] == ">":
        # "<s> <p> <o>." without a space before the dot
        tokens[2] = tokens[2][:-1]
        tsv = False
    if len(tokens) != 3:
        raise ParseError(f"expected a triple, got {len(tokens)} tokens", lineno)
    s, p, o = (_strip_iri(t) for t in tokens)
    for tok in (s, p, o):
        if not tok:
            raise ParseError("empty term", lineno)
    if p in RDF_TYPE_FORMS or (tsv and p == "a"):
        dictionary.register_predicate(o, 1, lineno)
        return Fact(o, (dictionary.encode(s),))
    dictionary.register_predicate(p, 2, lineno)
    return Fact(p, (dictionary.encode(s), dictionary.encode(o)))


def _parse_fact_line(line: str, lineno: int, dictionary: Dictionary) -> Fact:
    parser = _RuleParser(line, lineno, dictionary)
    atom = parser.atom()
    parser.accept(".")
    parser.expect_end()
    if not atom.is_ground():
        raise ParseError("facts must not contain variables", lineno)
    dictionary.register_predicate(atom.predicate, atom.arity, lineno)
    return Fact(atom.predicate, atom.terms)


_RULE_TOKEN = re.compile(
    r'(?P<ws>\s+)'
    r'|(?P<comment>#.*)'
    r'|(?P<implies>:-)'
    r'|(?P<iri><[^>]*>)'
    r'|(?P<lit>"(?:[^"\\]|\\.)*"(?:@[A-Za-z0-9-]+|\^\^<[^>]*>)?)'
    r'|(?P<var>\?[A-Za-z_]\w*)'
    r'|(?P<name>[^\s(),"<>#?.][^\s(),"<>]*(?<!\.))'
    r'|(?P<punct>[(),.])'
)


class _RuleParser:
    def __init__(self, text: str, lineno: int, dictionary: Dictionary):
        self.lineno = lineno
        self.dictionary = dictionary
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _RULE_TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
            kind = m.lastgroup
            if kind == "comment":
                break
            if kind != "ws":
                self.tokens.append((kind, m.group(), pos + 1))
            pos = m.end()
        self.i = 0

    def _error(self, msg):
        col = self.tokens[self.i][2] if self.i < len(self.tokens) else None
        return ParseError(msg, self.lineno, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def accept(self, text: str) -> bool:
        kind, value, _ = self.peek()
        if value == text and kind in ("punct", "implies"):
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            raise self._error(f"expected {text!r}")

    def expect_end(self):
        if self.i != len(self.tokens):
            raise self._error(f"unexpected token {self.tokens[self.i][1]!r}")

    def atom(self) -> Atom:
        kind, value, _ = self.peek()
        if kind not in ("name", "iri"):
            raise self._error("expected a predicate")
        self.i += 1
        predicate = _strip_iri(value)
        self.expect("(")
        terms = []
        if not self.accept(")"):
            while True:
                terms.append(self.term())
                if self.accept(")"):
                    break
                self.expect(",")
        return Atom(predicate, tuple(terms))

    def term(self):
        kind, value, _ = self.peek()
        if kind == "var":
            self.i += 1
            return Var(value[1:])
        if kind in ("name", "iri", "lit"):
            self.i += 1
            return self.dictionary.encode(_strip_iri(value))
        raise self._error("expected a term")


def parse_program(source: Union[str, TextIO], dictionary: Dictionary) -> Program:
    """Parse rules of the form ``H :- B1, ..., Bn .``, one per line.

    Variables start with ``?``; every other argument is a constant and is
    registered in ``dictionary``.  ``H .`` is accepted as shorthand for a
    body-free rule.
    """
    rules = []
    for lineno, line in enumerate(_as_lines(source), start=1):
        parser = _RuleParser(line, lineno, dictionary)
        if not parser.tokens:
            continue
        head = parser.atom()
        body = []
        if parser.accept(":-"):
            if not parser.accept("."):
                while True:
                    body.append(parser.atom())
                    if parser.accept("."):
                        break
                    parser.expect(",")
        else:
            parser.expect(".")
        parser.expect_end()
        for a in (head, *body):
            dictionary.register_predicate(a.predicate, a.arity, lineno)
        rules.append(Rule(head, body))
    return Program(rules)


def read_dataset(path, dictionary: Dictionary) -> list[Fact]:
    with open(path, encoding="utf-8") as fh:
        return parse_triples(fh, dictionary)


def read_program(path, dictionary: Dictionary) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh, dictionary)
