"""
Command-line entry point.

    planner [--quiet | --verbose] COMMAND ...

JSON results go to standard output, reports and logs to standard error.
Exit codes: 0 success, 1 refusal or failure, 2 input error, 3 budget exhausted.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import CommandResult, get_registry
from .config import LOG_LEVEL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planner",
        description="Eager qualitative timeline-based planning: check, solve, verify, experiment.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("-q", "--quiet", action="store_true", help="Suppress reports on standard error")
    noise.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    get_registry().add_subparsers(parser)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def emit(result: CommandResult, quiet: bool = False) -> None:
    """Write a command result: payload to stdout, report to stderr."""
    if result.text is not None:
        sys.stdout.write(result.text)
    if result.data is not None:
        sys.stdout.write(json.dumps(result.data, indent=2) + "\n")
    if not quiet:
        for line in result.report:
            print(line, file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    result = get_registry().execute(args.command, args)
    emit(result, quiet=args.quiet)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
