"""verify: check a plan file against every rule of a problem."""

import argparse

from ..oracle import verify_solution
from ..storage import load_plan
from .base import EXIT_FAILURE, EXIT_OK, FAIL, OK, BaseCommand, CommandResult, read_problem


class VerifyCommand(BaseCommand):
    def get_description(self) -> str:
        return "Check whether a plan file is a solution plan of a problem"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("problem", help="Problem file")
        parser.add_argument("plan", help="Plan file (JSON)")
        parser.add_argument("--show-plan", action="store_true", help="Render the plan in the report")

    def run(self, args: argparse.Namespace) -> CommandResult:
        problem = read_problem(args.problem)
        plan = load_plan(args.plan)
        report = verify_solution(problem, plan)

        result = CommandResult(EXIT_OK if report.is_solution else EXIT_FAILURE, report.to_dict())
        if args.show_plan:
            result.report.append(plan.render())
        for check in report.checks:
            if not check.satisfied:
                result.add(FAIL, check.describe())
        if report.is_solution:
            result.add(OK, f"solution plan: all {len(report.checks)} rules satisfied")
        else:
            result.add(FAIL, f"not a solution: {len(report.failing_rules)} of {len(report.checks)} rules fail")
        return result
