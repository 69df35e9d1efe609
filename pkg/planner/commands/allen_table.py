"""allen-table: print the eagerness table of Allen-relation rules."""

import argparse

from ..allen import allen_table, format_table_csv, format_table_text
from .base import EXIT_OK, OK, BaseCommand, CommandResult


class AllenTableCommand(BaseCommand):
    def get_description(self) -> str:
        return "Print the eagerness analysis of the Allen-relation encodings"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--format", choices=("text", "csv"), default="text", help="Output format")
        parser.add_argument("--reflexive", action="store_true", help="Use non-strict encodings")

    def run(self, args: argparse.Namespace) -> CommandResult:
        rows = allen_table(reflexive=args.reflexive)
        text = format_table_csv(rows) if args.format == "csv" else format_table_text(rows)
        eager = sum(1 for r in rows if not r.overall)
        return CommandResult(EXIT_OK, text=text).add(OK, f"{len(rows)} rows, {eager} eager")
