from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from cli.commands import EXIT_ERROR, Commands
from constructions.pipeline import TARGETS
from core.config import AppConfig, load_config
from core.errors import ConfigError, ResourceBound, WKKitError


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-stack", type=int, help="PDA stack cap (default |w| + 2)")
    caps.add_argument("--max-steps", type=int, help="PDA expansion cap (default 10 (|w|+2) |states|)")
    caps.add_argument("--cs-budget", type=int, help="sentential forms per context-sensitive search")
    caps.add_argument("--jobs", type=int, help="length strata enumerated concurrently")
    caps.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = argparse.ArgumentParser(prog="wkkit", description="Restricted Watson-Crick automata toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[caps], help="decide one word")
    run.add_argument("file")
    run.add_argument("--word", nargs="+", required=True, help="word tokens; '-' is the empty word")
    run.add_argument("--trace", action="store_true", help="print the run to stderr")

    classify = sub.add_parser("classify", parents=[caps], help="print the subclass flags")
    classify.add_argument("file")

    convert = sub.add_parser("convert", parents=[caps], help="apply a construction")
    convert.add_argument("file")
    convert.add_argument("--to", required=True, choices=TARGETS)
    convert.add_argument("-o", "--output")
    convert.add_argument("--pad", default="a", help="unary symbol when lifting a DFA")

    enum = sub.add_parser("enum", parents=[caps], help="list accepted words")
    enum.add_argument("file")
    enum.add_argument("--max-len", type=int)

    equiv = sub.add_parser("equiv", parents=[caps], help="bounded equivalence check")
    equiv.add_argument("left")
    equiv.add_argument("right")
    equiv.add_argument("--max-len", type=int)

    weak = sub.add_parser("check-weak-det", parents=[caps], help="bounded weak-determinism check")
    weak.add_argument("file")
    weak.add_argument("--max-len", type=int)
    return parser


def apply_flags(config: AppConfig, args: argparse.Namespace) -> AppConfig:
    for name in ("max_stack", "max_steps", "cs_budget", "jobs", "max_len"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise ConfigError(f"--{name.replace('_', '-')} must be non-negative")
    if args.max_stack is not None:
        config.engine.max_stack = args.max_stack
    if args.max_steps is not None:
        config.engine.max_steps = args.max_steps
    if args.cs_budget is not None:
        config.engine.cs_budget = args.cs_budget
    if args.jobs is not None:
        config.oracle.jobs = args.jobs
    if getattr(args, "max_len", None) is not None:
        config.oracle.max_len = args.max_len
        config.engine.weak_det_max_len = args.max_len
    if args.verbose:
        config.logging.level = "DEBUG" if args.verbose > 1 else "INFO"
    return config


def dispatch(commands: Commands, args: argparse.Namespace) -> int:
    config = commands.config
    match args.command:
        case "run":
            return commands.run(args.file, args.word, args.trace)
        case "classify":
            return commands.classify(args.file)
        case "convert":
            return commands.convert(args.file, args.to, args.output, args.pad)
        case "enum":
            return commands.enum(args.file, config.oracle.max_len)
        case "equiv":
            return commands.equiv(args.left, args.right, config.oracle.max_len)
        case "check-weak-det":
            return commands.check_weak_det(args.file, config.engine.weak_det_max_len)
    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0

    try:
        config = apply_flags(load_config(), args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    logging.basicConfig(level=config.logging.level, format=config.logging.format)
    try:
        return dispatch(Commands(config), args)
    except ResourceBound as exc:
        print(f"error: {exc.reason}", file=sys.stderr)
    except WKKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
