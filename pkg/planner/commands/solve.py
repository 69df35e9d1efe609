"""solve: search for a solution plan of an eager problem."""

import argparse
import logging
from pathlib import Path

from ..automata.dot import product_dot
from ..config import DEFAULT_MAX_LEN, DEFAULT_MAX_STATES
from ..solver import BUDGET_EXHAUSTED, SOLUTION, find_solution
from ..storage import save_plan
from .base import EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, FAIL, OK, WARN, BaseCommand, CommandResult, read_problem

logger = logging.getLogger(__name__)


class SolveCommand(BaseCommand):
    """Shortest-witness search over the product automaton."""

    def get_description(self) -> str:
        return "Find a shortest solution plan, or show that none exists"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("problem", help="Problem file")
        parser.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES,
                            help=f"Product-state budget (default {DEFAULT_MAX_STATES})")
        parser.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN,
                            help=f"Word-length budget (default {DEFAULT_MAX_LEN})")
        parser.add_argument("--emit-plan", metavar="FILE", help="Write the solution plan here")
        parser.add_argument("--dot", metavar="FILE", help="Write the explored product fragment as DOT")

    def run(self, args: argparse.Namespace) -> CommandResult:
        problem = read_problem(args.problem)
        result = find_solution(problem, max_states=args.max_states, max_len=args.max_len,
                               record=bool(args.dot))

        if args.dot:
            Path(args.dot).write_text(product_dot(result.explored, result.product), encoding="utf-8")
            logger.info("wrote product fragment to %s", args.dot)

        if result.status == SOLUTION:
            out = CommandResult(EXIT_OK, result.to_dict())
            out.add(OK, f"solution with horizon {result.plan.horizon} "
                        f"({result.stats['states_explored']} states explored)")
            out.report.append(result.plan.render())
            if args.emit_plan:
                save_plan(result.plan, args.emit_plan)
                out.add(OK, f"plan written to {args.emit_plan}")
            return out
        if result.status == BUDGET_EXHAUSTED:
            return CommandResult(EXIT_BUDGET, result.to_dict()).add(
                WARN, f"budget exhausted ({result.stats['limit_hit']} limit) before a verdict"
            )
        return CommandResult(EXIT_FAILURE, result.to_dict()).add(FAIL, "no solution plan exists")
