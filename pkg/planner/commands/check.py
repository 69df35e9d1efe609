"""check: validate a problem file and classify every rule."""

import argparse

from ..eagerness import classify_problem
from .base import EXIT_FAILURE, EXIT_OK, FAIL, OK, BaseCommand, CommandResult, read_problem


class CheckCommand(BaseCommand):
    """Validation plus per-rule eagerness with reasons."""

    def get_description(self) -> str:
        return "Validate a problem file and report which rules are eager"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("problem", help="Problem file")

    def run(self, args: argparse.Namespace) -> CommandResult:
        problem = read_problem(args.problem)
        reports = classify_problem(problem)
        eager = all(r.eager for r in reports)
        result = CommandResult(
            EXIT_OK if eager else EXIT_FAILURE,
            {"valid": True, "eager": eager, "rules": [r.to_dict() for r in reports]},
        )
        for r in reports:
            if not r.eager:
                result.add(FAIL, r.describe())
        if eager:
            result.add(OK, f"all rules eager ({len(reports)} rules, {len(problem.variables)} variables)")
        return result
