"""Batch command-line driver for the bundled languages.

Subcommands::

    zipstrat let names      declared names, one per line, in source order
    zipstrat let check      scope errors, one per line; exit 2 when any
    zipstrat let opt        optimize (all seven rules) under a chosen strategy
    zipstrat let pretty     reprint in canonical layout
    zipstrat smell fix      rewrite a mini-language expression smell-free

Exit codes: 0 success, 1 syntax error, 2 scope errors, 3 rewrite budget
exhausted.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import letlang, smells
from .lexing import ParseError
from .strategies import (
    FuelExhaustedError,
    apply_tp,
    full_bu_tp,
    full_td_tp,
    innermost,
    outermost,
    try_tp,
)
from .zipper import export_json, from_zipper

DEFAULT_FUEL = 1_000_000

EXIT_OK = 0
EXIT_SYNTAX = 1
EXIT_SCOPE = 2
EXIT_FUEL = 3


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("fuel must be >= 1")
    return value


def _add_common(parser: argparse.ArgumentParser, *, strategy: bool, fuel: bool, output: bool):
    parser.add_argument(
        "--input", default="-", metavar="PATH|-", help="input file, or - for stdin (default)"
    )
    if strategy:
        parser.add_argument(
            "--strategy",
            choices=["innermost", "outermost", "full-td", "full-bu"],
            default="innermost",
            help="traversal scheme driving the rules (default: innermost)",
        )
    if fuel:
        parser.add_argument(
            "--fuel",
            type=_positive_int,
            default=DEFAULT_FUEL,
            metavar="N",
            help=f"maximum number of rewrites (default: {DEFAULT_FUEL})",
        )
    if output:
        parser.add_argument(
            "--output",
            choices=["text", "ast"],
            default="text",
            help="print concrete syntax or the structured AST (default: text)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zipstrat", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    let_cmd = commands.add_parser("let", help="operate on let programs")
    let_sub = let_cmd.add_subparsers(dest="subcommand", required=True)

    p = let_sub.add_parser("names", help="list declared names in source order")
    _add_common(p, strategy=False, fuel=False, output=False)
    p.set_defaults(handler=_cmd_let_names)

    p = let_sub.add_parser("check", help="report scope errors")
    _add_common(p, strategy=False, fuel=False, output=False)
    p.set_defaults(handler=_cmd_let_check)

    p = let_sub.add_parser("opt", help="optimize a program")
    _add_common(p, strategy=True, fuel=True, output=True)
    p.set_defaults(handler=_cmd_let_opt)

    p = let_sub.add_parser("pretty", help="reprint in canonical layout")
    _add_common(p, strategy=False, fuel=False, output=True)
    p.set_defaults(handler=_cmd_let_pretty)

    smell_cmd = commands.add_parser("smell", help="operate on mini-language expressions")
    smell_sub = smell_cmd.add_subparsers(dest="subcommand", required=True)

    p = smell_sub.add_parser("fix", help="rewrite an expression smell-free")
    _add_common(p, strategy=False, fuel=True, output=True)
    p.set_defaults(handler=_cmd_smell_fix)

    return parser


def _emit_tree(args: argparse.Namespace, value: Any, lang, to_text) -> None:
    if getattr(args, "output", "text") == "ast":
        print(export_json(value, lang))
    else:
        print(to_text(value))


def _cmd_let_names(args: argparse.Namespace) -> int:
    root = letlang.parse(_read_input(args.input))
    for name in letlang.names(letlang.root_zipper(root)):
        print(name)
    return EXIT_OK


def _cmd_let_check(args: argparse.Namespace) -> int:
    root = letlang.parse(_read_input(args.input))
    errors = letlang.errors_strategic(letlang.root_zipper(root))
    for name in errors:
        print(name)
    return EXIT_SCOPE if errors else EXIT_OK


def _cmd_let_opt(args: argparse.Namespace) -> int:
    root = letlang.parse(_read_input(args.input))
    step = letlang.program_step()
    if args.strategy == "innermost":
        strategy = innermost(step, args.fuel)
    elif args.strategy == "outermost":
        strategy = outermost(step, args.fuel)
    elif args.strategy == "full-td":
        strategy = try_tp(full_td_tp(step))
    else:
        strategy = try_tp(full_bu_tp(step))
    optimized = from_zipper(apply_tp(strategy, letlang.root_zipper(root)))
    _emit_tree(args, optimized, letlang.LANG, letlang.pretty)
    return EXIT_OK


def _cmd_let_pretty(args: argparse.Namespace) -> int:
    root = letlang.parse(_read_input(args.input))
    _emit_tree(args, root, letlang.LANG, letlang.pretty)
    return EXIT_OK


def _cmd_smell_fix(args: argparse.Namespace) -> int:
    e = smells.parse_m(_read_input(args.input))
    fixed = smells.eliminate_smells(e, args.fuel)
    _emit_tree(args, fixed, smells.LANG, smells.pretty_m)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    # Attribute evaluation and traversal recurse along the tree; allow deep inputs.
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except FuelExhaustedError as exc:
        print(f"rewrite budget exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SYNTAX


if __name__ == "__main__":
    sys.exit(main())
