"""lowerbound: count pairwise-distinguished prefixes of the P_n family."""

import argparse
import random
from pathlib import Path

from ..config import LOWERBOUND_MAX_N
from ..lowerbound import check_statement_bridge, count_distinguished, format_lowerbound_csv
from ..errors import CommandError
from .base import EXIT_INPUT, EXIT_OK, OK, WARN, BaseCommand, CommandResult


class LowerboundCommand(BaseCommand):
    def get_description(self) -> str:
        return "Certify more than 2^n distinguishable states of the rule automaton for P_n"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, nargs="+", default=[4], metavar="N",
                            help=f"Instance sizes, 1..{LOWERBOUND_MAX_N} (default 4)")
        parser.add_argument("--csv", metavar="FILE", help="Also write results as CSV")
        parser.add_argument("--bridge-samples", type=int, default=0, metavar="K",
                            help="Random oracle-vs-closed-form checks per n")
        parser.add_argument("--seed", type=int, default=0, help="Seed for --bridge-samples")

    def run(self, args: argparse.Namespace) -> CommandResult:
        bad = [n for n in args.n if not 1 <= n <= LOWERBOUND_MAX_N]
        if bad:
            raise CommandError(f"n must be between 1 and {LOWERBOUND_MAX_N}, got {bad[0]}", EXIT_INPUT)

        rng = random.Random(args.seed)
        out = CommandResult(EXIT_OK)
        results = []
        for n in args.n:
            if args.bridge_samples:
                checked = check_statement_bridge(n, args.bridge_samples, rng)
                out.add(OK, f"n={n}: oracle agrees with the closed form on {checked} samples")
            result = count_distinguished(n)
            results.append(result)
            relation = ">" if result.strict else "<="
            glyph = OK if result.strict else WARN
            out.add(glyph, f"n={n}: classes={result.classes} {relation} {result.two_pow_n} "
                           f"({result.verified_pairs} pairs verified)")
        out.data = {"results": [r.to_dict() for r in results]}
        if args.csv:
            Path(args.csv).write_text(format_lowerbound_csv(results), encoding="utf-8")
            out.add(OK, f"CSV written to {args.csv}")
        return out
