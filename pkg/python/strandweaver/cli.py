"""Command-line front end.

Expressions are given inline or as ``@path`` to read them from a file.
``;`` is diagrammatic order: ``a ; b`` runs ``a`` first.

Exit codes
----------
0  success, equal, all checks pass
1  not equal, or a verification failure
2  usage or parse error
3  arity error (including sampling a diagram without inputs)
4  non-stochastic matrix input
5  stale or invalid redex
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from .diagram import Diagram, from_slices, to_slices
from .errors import (
    CompositionError,
    DimensionError,
    IndexRangeError,
    InvalidRedexError,
    NoInputError,
    ParameterDomainError,
    ParseError,
    StochasticityError,
)
from .expr_parser import format_diagram, parse_expr, parse_expr_file
from .fuzz import DEFAULT_INSTANTIATIONS, DEFAULT_SEED
from .matrix import StochasticMatrix, column, format_scalar, probability
from .render import FORMATS, render
from .rewriting import apply, format_step, locate, random_walk, relation_rules, verify_rule
from .semantics import evaluate, sample_counts, total_variation
from .synthesis import FILLER, equal, normalize, synth_matrix

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_ARITY = 3
EXIT_NOT_STOCHASTIC = 4
EXIT_INVALID_REDEX = 5

LOG_LEVEL_ENV = "STRANDWEAVER_LOG_LEVEL"


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_expr(text: str) -> Diagram:
    if text.startswith("@"):
        return parse_expr_file(text[1:])
    return parse_expr(text)


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        _logger.info("wrote %s", args.output)
    else:
        sys.stdout.write(text)


def _eval_command(args: argparse.Namespace) -> int:
    d = _read_expr(args.expr)
    _emit(args, evaluate(d).to_json(indent=2))
    return EXIT_OK


def _synth_command(args: argparse.Namespace) -> int:
    try:
        a = StochasticMatrix.load_from_json(args.matrix)
    except StochasticityError as exc:
        where = f" (column {exc.column})" if exc.column is not None else ""
        raise CommandError(f"not stochastic{where}: {exc}", EXIT_NOT_STOCHASTIC) from exc
    except DimensionError as exc:
        raise CommandError(f"malformed matrix: {exc}", EXIT_NOT_STOCHASTIC) from exc
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CommandError(f"cannot read matrix JSON: {exc}", EXIT_USAGE) from exc
    _emit(args, format_diagram(synth_matrix(a)))
    return EXIT_OK


def _normalize_command(args: argparse.Namespace) -> int:
    _emit(args, format_diagram(normalize(_read_expr(args.expr))))
    return EXIT_OK


def _check_equal_command(args: argparse.Namespace) -> int:
    d1, d2 = _read_expr(args.expr1), _read_expr(args.expr2)
    if (d1.dom, d1.cod) != (d2.dom, d2.cod):
        raise CommandError(
            f"arity mismatch: {d1.dom} -> {d1.cod} against {d2.dom} -> {d2.cod}", EXIT_ARITY
        )
    same = equal(d1, d2)
    print("equal" if same else "not equal")
    print(format_diagram(normalize(d1)))
    print(format_diagram(normalize(d2)))
    return EXIT_OK if same else EXIT_FAIL


def _verify_relations_command(args: argparse.Namespace) -> int:
    rules = relation_rules()
    if args.rule:
        known = {r.name for r in rules}
        unknown = sorted(set(args.rule) - known)
        if unknown:
            raise CommandError(f"unknown rule(s): {', '.join(unknown)}", EXIT_USAGE)
        rules = [r for r in rules if r.name in args.rule]

    def _check(rule):
        return verify_rule(rule, count=args.count, seed=args.seed)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        reports = list(pool.map(_check, rules))
    failed = 0
    for checks in reports:
        for check in checks:
            print(check)
            if not check.passed:
                failed += 1
                _logger.error("relation %s fails for %s", check.rule, dict(check.binding))
    _logger.info("%d checks, %d failed", sum(map(len, reports)), failed)
    return EXIT_FAIL if failed else EXIT_OK


def _sample_command(args: argparse.Namespace) -> int:
    d = _read_expr(args.expr)
    if args.count < 1:
        raise CommandError("count must be positive", EXIT_USAGE)
    hits = sample_counts(d, args.input, args.count, args.seed)
    expected = column(evaluate(d), args.input)
    lines = [
        f"output {i}: {n} (expected {format_scalar(expected[i - 1, 0])})"
        for i, n in enumerate(hits, start=1)
    ]
    lines.append(f"total variation: {float(total_variation(hits, expected)):.6f}")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _render_command(args: argparse.Namespace) -> int:
    _emit(args, render(_read_expr(args.expr), args.format))
    return EXIT_OK


def _rewrite_command(args: argparse.Namespace) -> int:
    slices = to_slices(_read_expr(args.expr))
    trace: List[str] = []
    if args.walk is not None:
        def _record(step, redex, _result):
            trace.append(format_step(step, redex))

        result = random_walk(slices, args.walk, args.seed, callbacks=[_record])
    else:
        if args.rule is None or args.at is None:
            raise CommandError("rewrite needs --rule and --at, or --walk", EXIT_USAGE)
        fresh = probability(args.fresh) if args.fresh is not None else FILLER
        redex = locate(slices, args.rule, args.at, args.offset, reverse=args.reverse, fresh=fresh)
        result = apply(slices, redex)
        trace.append(format_step(1, redex))
    trace.append(format_diagram(from_slices(result)))
    _emit(args, "\n".join(trace))
    return EXIT_OK


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", help="write the result to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strandweaver",
        description="Exact diagrams for stochastic matrices.",
    )
    parser.add_argument(
        "--log-level",
        default=os.environ.get(LOG_LEVEL_ENV, "WARNING"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help=f"stderr log level (default: ${LOG_LEVEL_ENV} or WARNING)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="print the matrix of a diagram as JSON")
    p.add_argument("expr")
    _add_output(p)
    p.set_defaults(handler=_eval_command)

    p = sub.add_parser("synth", help="print a diagram for a matrix JSON file")
    p.add_argument("matrix")
    _add_output(p)
    p.set_defaults(handler=_synth_command)

    p = sub.add_parser("normalize", help="print the canonical form of a diagram")
    p.add_argument("expr")
    _add_output(p)
    p.set_defaults(handler=_normalize_command)

    p = sub.add_parser("check-equal", help="decide whether two diagrams are equal")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(handler=_check_equal_command)

    p = sub.add_parser("verify-relations", help="check every relation on random parameters")
    p.add_argument("--rule", action="append", help="restrict to this rule (repeatable)")
    p.add_argument("--count", type=int, default=DEFAULT_INSTANTIATIONS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=_verify_relations_command)

    p = sub.add_parser("sample", help="histogram of sampled output strands")
    p.add_argument("expr")
    p.add_argument("input", type=int)
    p.add_argument("count", type=int)
    p.add_argument("seed", type=int, nargs="?", default=DEFAULT_SEED)
    _add_output(p)
    p.set_defaults(handler=_sample_command)

    p = sub.add_parser("render", help="draw a diagram")
    p.add_argument("expr")
    p.add_argument("--format", choices=FORMATS, default="ascii")
    _add_output(p)
    p.set_defaults(handler=_render_command)

    p = sub.add_parser("rewrite", help="apply one rule, or a random walk, and print the trace")
    p.add_argument("expr")
    p.add_argument("--rule")
    p.add_argument("--at", type=int, help="slice index of the match")
    p.add_argument("--offset", type=int, default=0, help="strands left of the match")
    p.add_argument("--reverse", action="store_true", help="rewrite right to left")
    p.add_argument("--fresh", help="value for parameters the match leaves free")
    p.add_argument("--walk", type=int, metavar="STEPS")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_output(p)
    p.set_defaults(handler=_rewrite_command)
    return parser


_EXIT_CODES: Dict[type, int] = {
    ParseError: EXIT_USAGE,
    ParameterDomainError: EXIT_USAGE,
    CompositionError: EXIT_ARITY,
    DimensionError: EXIT_ARITY,
    NoInputError: EXIT_ARITY,
    IndexRangeError: EXIT_ARITY,
    StochasticityError: EXIT_NOT_STOCHASTIC,
    InvalidRedexError: EXIT_INVALID_REDEX,
    OSError: EXIT_USAGE,
}


def _exit_code(exc: BaseException) -> Optional[int]:
    for kind, code in _EXIT_CODES.items():
        if isinstance(exc, kind):
            return code
    return None


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        code = handler(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except Exception as exc:
        code = _exit_code(exc)
        if code is None:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return code
    _logger.info("%s finished with exit code %d", args.command, code)
    return code


__all__ = ["build_parser", "main"]
