"""Datalog materialisation over compressed RDF facts.

Facts are stored as meta-facts over meta-constants, which denote sorted runs
of constants and may share structure.  Rules are applied to whole meta-facts
at once with merge-based semi-joins and cross-joins, and duplicate facts are
removed with a streaming anti-join.
"""

from .engine import Materialisation, compress_dataset, expand, materialise
from .ingest import (Atom, Dictionary, Fact, Program, Rule, Var, parse_program,
                     parse_triples)
from .reference import mat_reference, verify
from .store import MetaFact, MetaFactSet, MetaSubstitution, MuMapping

__all__ = [
    "Atom", "Dictionary", "Fact", "Materialisation", "MetaFact", "MetaFactSet",
    "MetaSubstitution", "MuMapping", "Program", "Rule", "Var",
    "compress_dataset", "expand", "mat_reference", "materialise",
    "parse_program", "parse_triples", "verify",
]

__version__ = "0.1.0"
