"""Command-line entry point.

Exit status: 0 on success, 1 when ``verify`` finds a mismatch, 2 on usage or
parse errors, 3 on I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import family, kernels
from .engine import compress_dataset, materialise
from .errors import MetamatError
from .ingest import Dictionary, RDF_TYPE_IRI, format_atom, read_dataset, read_program
from .metrics import mu_stats, repsize_compressed, repsize_flat
from .reference import compare_fact_sets, mat_reference
from .store import MuMapping

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(MetamatError):
    pass


def _load(args):
    dictionary = Dictionary()
    facts = read_dataset(args.data, dictionary)
    program = read_program(args.rules, dictionary)
    return dictionary, program, facts


def _term(text: str) -> str:
    if text.startswith('"') or text.startswith("_:"):
        return text
    return f"<{text}>"


def render_facts(facts, dictionary: Dictionary, as_triples: bool = False) -> list[str]:
    """Sorted, decoded output lines for ``facts``."""
    lines = []
    for f in facts:
        terms = [dictionary.decode(a) for a in f.args]
        if not as_triples:
            lines.append(format_atom(f.predicate, terms))
        elif len(terms) == 1:
            lines.append(f"{_term(terms[0])} <{RDF_TYPE_IRI}> {_term(f.predicate)} .")
        elif len(terms) == 2:
            lines.append(f"{_term(terms[0])} {_term(f.predicate)} {_term(terms[1])} .")
        else:
            raise UsageError(f"cannot write {f.predicate}/{len(terms)} as a triple")
    lines.sort()
    return lines


def _write_lines(lines, path):
    text = "".join(line + "\n" for line in lines)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_materialize(args) -> int:
    dictionary, program, facts = _load(args)
    if args.engine == "reference":
        result = mat_reference(program, facts)
    else:
        result = materialise(program, facts).expand()
    _write_lines(render_facts(result, dictionary, args.as_triples), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    dictionary, program, facts = _load(args)
    reference = mat_reference(program, facts)
    compressed = materialise(program, facts).expand()
    report = compare_fact_sets(reference, compressed, args.sample)
    print(report.summary(dictionary))
    return EXIT_OK if report.equal else EXIT_MISMATCH


def stats_record(program, facts) -> dict:
    """The metrics record printed by ``stats``."""
    facts = list(facts)
    explicit = set(facts)
    mu_e = MuMapping()
    compressed_e = repsize_compressed(compress_dataset(explicit, mu_e), mu_e)
    result = materialise(program, explicit)
    expanded = result.expand()
    mu_info = mu_stats(result.mu, result.facts)
    flat_e, flat_i = repsize_flat(explicit), repsize_flat(expanded)
    comp_m = repsize_compressed(result.facts, result.mu)
    reachable = result.mu.reachable(a for f in result.facts for a in f.args)
    return {
        "facts_explicit": len(explicit),
        "facts_materialised": len(expanded),
        "repsize_flat_E": flat_e,
        "repsize_flat_I": flat_i,
        "repsize_flat_diff": flat_i - flat_e,
        "repsize_compressed_E": compressed_e,
        "repsize_compressed_M": comp_m,
        "repsize_compressed_diff": comp_m - compressed_e,
        "mu_avg_length": round(mu_info["avg_length"], 3),
        "mu_max_length": mu_info["max_length"],
        "mu_max_depth": mu_info["max_depth"],
        "rounds": result.stats.rounds,
        "meta_facts": len(result.facts),
        "mu_nodes": len(result.mu),
        "mu_nodes_reachable": len(reachable),
        "rule_applications": result.stats.rule_applications,
        "queue_steps": result.stats.queue_steps,
        "kernel_backend": kernels.BACKEND,
    }


def cmd_stats(args) -> int:
    _, program, facts = _load(args)
    print(json.dumps(stats_record(program, facts), separators=(", ", ": ")))
    return EXIT_OK


def cmd_gen_example(args) -> int:
    if args.n < 1 or args.m < 1:
        raise UsageError("--n and --m must be positive")
    text = family.ntriples_text(args.n, args.m)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.rules_out:
        with open(args.rules_out, "w", encoding="utf-8") as fh:
            fh.write(family.RULES_TEXT)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metamat",
        description="Datalog materialisation over compressed RDF facts.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--rules", required=True, help="datalog rules file")
        p.add_argument("--data", required=True,
                       help="triples (N-Triples subset or 3-column TSV) or facts")

    p = sub.add_parser("materialize", help="compute and write all facts")
    inputs(p)
    p.add_argument("--engine", choices=["compressed", "reference"], default="compressed")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--as-triples", action="store_true",
                   help="write unary and binary facts back as triples")
    p.set_defaults(func=cmd_materialize)

    p = sub.add_parser("verify", help="compare the compressed engine with the oracle")
    inputs(p)
    p.add_argument("--sample", type=int, default=10,
                   help="how many differing facts to list")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="print representation-size metrics as JSON")
    inputs(p)
    p.add_argument("--engine", choices=["compressed"], default="compressed")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen-example", help="write the synthetic running example")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", help="triples output file (default: stdout)")
    p.add_argument("--rules-out", help="also write the two rules here")
    p.set_defaults(func=cmd_gen_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MetamatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
