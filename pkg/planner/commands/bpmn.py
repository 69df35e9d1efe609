"""bpmn: compile a SESE block tree into a problem file."""

import argparse
from pathlib import Path

from ..bpmn import compile_tree, load_tree
from ..bpmn.fixtures import enrich_with_patient_condition
from ..dsl import format_problem
from ..errors import CommandError
from .base import EXIT_INPUT, EXIT_OK, OK, BaseCommand, CommandResult

ENRICH_BLOCKS = ("b4", "b16")


class BpmnCommand(BaseCommand):
    def get_description(self) -> str:
        return "Compile a SESE block tree (JSON) into an eager planning problem"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("tree", help="SESE tree file (JSON)")
        parser.add_argument("-o", "--output", metavar="FILE",
                            help="Write the problem here instead of standard output")
        parser.add_argument("--enrich", action="store_true",
                            help="Add the patient-condition variable and its rules (needs blocks b4, b16)")

    def run(self, args: argparse.Namespace) -> CommandResult:
        tree = load_tree(args.tree)
        compiled = compile_tree(tree)
        if args.enrich:
            missing = [b for b in ENRICH_BLOCKS if b not in compiled.var_index]
            if missing:
                raise CommandError(f"--enrich needs blocks {', '.join(missing)} in the tree", EXIT_INPUT)
            compiled = enrich_with_patient_condition(compiled)

        problem = compiled.problem
        text = format_problem(problem, header=f"compiled from SESE tree {tree.id} ({Path(args.tree).name})")
        summary = f"{len(problem.variables)} variables, {len(problem.rules)} rules"
        if not args.output:
            return CommandResult(EXIT_OK, text=text).add(OK, f"compiled {summary}")

        Path(args.output).write_text(text, encoding="utf-8")
        data = {
            "tree": tree.id,
            "output": args.output,
            "variables": len(problem.variables),
            "rules": len(problem.rules),
            "blocks": {block: list(names) for block, names in compiled.var_index.items()},
        }
        return CommandResult(EXIT_OK, data).add(OK, f"compiled {summary} into {args.output}")
