"""Compilation of SESE block trees into eager planning problems."""

from .blocks import BlockKind, SeseBlock, dump_tree, load_tree, tree_from_dict
from .catalog import RULE_CATALOG, get_rule_templates
from .compiler import CompiledProblem, compile_tree, rules_for_block
from .fixtures import emergency_department_problem, emergency_department_tree, fixture_plans

__all__ = [
    "BlockKind",
    "SeseBlock",
    "dump_tree",
    "load_tree",
    "tree_from_dict",
    "RULE_CATALOG",
    "get_rule_templates",
    "CompiledProblem",
    "compile_tree",
    "rules_for_block",
    "emergency_department_problem",
    "emergency_department_tree",
    "fixture_plans",
]
