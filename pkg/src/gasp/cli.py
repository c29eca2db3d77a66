"""Command-line front-end.

Exit codes: 0 on success, 1 on semantic errors (parse failures, exceeded
caps), 2 on usage errors, and 3 when a cautious/brave query does not hold
(so shell scripts can branch on the answer).
"""

from __future__ import annotations

import argparse
import sys

from .classify import classify
from .core import HEAD_CAP_DEFAULT, Atom
from .errors import GaspError
from .flp import enumerate_flp_answer_sets
from .parser import format_program, parse_program
from .psp import enumerate_psp_answer_sets
from .qbf import build_reduction, qbf_valid, sniff_and_parse, verify_reduction
from .reasoning import brave, cautious, compare, format_report, run_fuzz

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_QUERY_FAILED = 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_program(path: str):
    return parse_program(_read(path))


def _add_semantics(sub) -> None:
    sub.add_argument(
        "--semantics", required=True, choices=("flp", "psp"),
        help="answer-set semantics to use",
    )


def _add_max_heads(sub) -> None:
    sub.add_argument(
        "--max-heads", type=int, default=HEAD_CAP_DEFAULT, metavar="N",
        help=f"head-atom cap for enumeration (default {HEAD_CAP_DEFAULT})",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gasp",
        description="Answer-set engine for programs with generalized-atom "
        "bodies, under the FLP and PSP semantics.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("answersets", help="enumerate answer sets of a program")
    _add_semantics(p)
    _add_max_heads(p)
    p.add_argument("file", help="program file (.gasp)")

    p = sub.add_parser("classify", help="classify every rule body")
    p.add_argument("file")

    for verb in ("cautious", "brave"):
        p = sub.add_parser(verb, help=f"{verb} consequence query")
        _add_semantics(p)
        p.add_argument("--atom", required=True, help="atom to query")
        _add_max_heads(p)
        p.add_argument("file")

    p = sub.add_parser("compare", help="run both semantics side by side")
    p.add_argument(
        "--report", choices=("text", "kv"), default="text",
        help="report style (default text)",
    )
    _add_max_heads(p)
    p.add_argument("file")

    p = sub.add_parser("qbf-reduce", help="emit the reduction program of a 2-QBF")
    p.add_argument(
        "--format", choices=("gasp",), default="gasp", help="output format"
    )
    p.add_argument("qbf_file")

    p = sub.add_parser(
        "qbf-verify", help="check the reduction against the brute-force oracle"
    )
    p.add_argument("qbf_file")

    p = sub.add_parser("fuzz", help="run a differential fuzz suite")
    p.add_argument(
        "--mode", required=True,
        choices=("convex-coincide", "psp-subset-flp", "divergence"),
    )
    p.add_argument("--cases", type=int, required=True, metavar="N")
    p.add_argument("--seed", type=int, required=True, metavar="S")

    return parser


def _cmd_answersets(args) -> int:
    program = _load_program(args.file)
    if args.semantics == "flp":
        sets = enumerate_flp_answer_sets(program, max_heads=args.max_heads)
    else:
        sets = enumerate_psp_answer_sets(program, max_heads=args.max_heads)
    for answer_set in sets:
        print(answer_set)
    return EXIT_OK


def _cmd_classify(args) -> int:
    program = _load_program(args.file)
    for i, rule in enumerate(program.rules, start=1):
        print(f"rule#{i}: {classify(rule.body).label}")
    return EXIT_OK


def _cmd_query(args, query) -> int:
    program = _load_program(args.file)
    holds = query(
        program, Atom(args.atom), args.semantics, max_heads=args.max_heads
    )
    print("yes" if holds else "no")
    return EXIT_OK if holds else EXIT_QUERY_FAILED


def _cmd_compare(args) -> int:
    program = _load_program(args.file)
    report = compare(program, max_heads=args.max_heads)
    sys.stdout.write(format_report(report, style=args.report))
    return EXIT_OK


def _cmd_qbf_reduce(args) -> int:
    formula = sniff_and_parse(_read(args.qbf_file))
    sys.stdout.write(format_program(build_reduction(formula)))
    return EXIT_OK


def _cmd_qbf_verify(args) -> int:
    formula = sniff_and_parse(_read(args.qbf_file))
    agrees = verify_reduction(formula)
    oracle = qbf_valid(formula)
    print(f"oracle: {'valid' if oracle else 'invalid'}")
    print(f"reduction agrees: {'yes' if agrees else 'no'}")
    if not agrees:
        print("mismatch between reduction and oracle", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _cmd_fuzz(args) -> int:
    result = run_fuzz(args.mode, args.cases, args.seed)
    print(
        f"mode={result.mode} cases={result.cases} "
        f"failures={len(result.failures)} divergent={result.divergent}"
    )
    for failure in result.failures:
        print(f"  {failure}")
    if args.mode == "divergence" and not result.failures:
        print(
            "divergence witness found"
            if result.divergent
            else "no divergence witness found"
        )
    return EXIT_OK if result.ok else EXIT_ERROR


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.verb == "answersets":
            return _cmd_answersets(args)
        if args.verb == "classify":
            return _cmd_classify(args)
        if args.verb == "cautious":
            return _cmd_query(args, cautious)
        if args.verb == "brave":
            return _cmd_query(args, brave)
        if args.verb == "compare":
            return _cmd_compare(args)
        if args.verb == "qbf-reduce":
            return _cmd_qbf_reduce(args)
        if args.verb == "qbf-verify":
            return _cmd_qbf_verify(args)
        if args.verb == "fuzz":
            return _cmd_fuzz(args)
        raise AssertionError(f"unhandled verb {args.verb}")
    except (GaspError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
