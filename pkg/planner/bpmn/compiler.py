"""
Compile SESE block trees into eager planning problems.

Every block b gets x_b over {top, bot} with top -> {top, bot} and
bot -> {top}; FLOW blocks add x_b_flow (bot -> top_before -> top_after ->
{bot, top_before}); XOR blocks add x_b_dec with free transitions. The root
variable has no transitions at all, so a plan holds exactly one root
token, and the triggerless goal rule forces it to top.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..models import ExistentialStatement, PlanningProblem, StateVariable, SynchronizationRule, TokenPattern
from .blocks import BlockKind, SeseBlock, check_tree
from .catalog import BOT, TOP, TOP_AFTER, TOP_BEFORE, TOP_HIGH, TOP_LOW, get_rule_templates, shape_atoms

logger = logging.getLogger(__name__)

GOAL_LABEL = "goal"


def block_var(block_id: str) -> str:
    return f"x_{block_id}"


def flow_var(block_id: str) -> str:
    return f"x_{block_id}_flow"


def dec_var(block_id: str) -> str:
    return f"x_{block_id}_dec"


@dataclass(frozen=True)
class CompiledProblem:
    problem: PlanningProblem
    var_index: Dict[str, Tuple[str, ...]]
    root: SeseBlock

    @property
    def root_var(self) -> str:
        return block_var(self.root.id)

    def rule(self, label: str) -> SynchronizationRule:
        for r in self.problem.rules:
            if r.label == label:
                return r
        raise KeyError(label)


def block_variables(block: SeseBlock, is_root: bool = False) -> List[StateVariable]:
    if is_root:
        variables = [StateVariable.of(block_var(block.id), [TOP, BOT], {})]
    else:
        variables = [StateVariable.of(block_var(block.id), [TOP, BOT], {TOP: [TOP, BOT], BOT: [TOP]})]
    if block.type is BlockKind.FLOW:
        variables.append(
            StateVariable.of(
                flow_var(block.id),
                [BOT, TOP_BEFORE, TOP_AFTER],
                {BOT: [TOP_BEFORE], TOP_BEFORE: [TOP_AFTER], TOP_AFTER: [BOT, TOP_BEFORE]},
            )
        )
    elif block.type is BlockKind.XOR:
        variables.append(StateVariable.of(dec_var(block.id), [BOT, TOP_HIGH, TOP_LOW]))
    return variables


def _resolve(block: SeseBlock, role: str) -> str:
    if role == "self":
        return block_var(block.id)
    if role == "flow":
        return flow_var(block.id)
    if role == "dec":
        return dec_var(block.id)
    return block_var(block.child(role).id)


def rules_for_block(block: SeseBlock) -> List[SynchronizationRule]:
    """
    Forward then backward catalog rules of one block, labelled "<id>:<code>".

    TASK blocks yield no rules.
    """
    rules = []
    for template in get_rule_templates(block.type):
        trigger_role, trigger_value = template.trigger
        target_role, target_value = template.target
        rules.append(
            SynchronizationRule(
                trigger=TokenPattern("a0", _resolve(block, trigger_role), trigger_value),
                disjuncts=(
                    ExistentialStatement(
                        quantifiers=(TokenPattern("a1", _resolve(block, target_role), target_value),),
                        clause=frozenset(shape_atoms(template.shape)),
                    ),
                ),
                label=f"{block.id}:{template.code}",
            )
        )
    return rules


def goal_rule(root: SeseBlock) -> SynchronizationRule:
    """exists t[x_root = top]. true"""
    return SynchronizationRule(
        trigger=None,
        disjuncts=(ExistentialStatement(quantifiers=(TokenPattern("t", block_var(root.id), TOP),)),),
        label=GOAL_LABEL,
    )


def compile_tree(tree: SeseBlock) -> CompiledProblem:
    """
    Compile a SESE tree.

    Args:
        tree: Root block (a bare TASK root is the root region itself)

    Returns:
        CompiledProblem with variables in preorder and rules per block

    Raises:
        MalformedTreeError: If block ids repeat
    """
    check_tree(tree)
    variables: List[StateVariable] = []
    rules: List[SynchronizationRule] = []
    var_index: Dict[str, Tuple[str, ...]] = {}
    for block in tree.walk():
        block_vars = block_variables(block, is_root=block is tree)
        variables.extend(block_vars)
        var_index[block.id] = tuple(v.name for v in block_vars)
        rules.extend(rules_for_block(block))
    rules.append(goal_rule(tree))
    logger.info("compiled tree %s: %d variables, %d rules", tree.id, len(variables), len(rules))
    return CompiledProblem(PlanningProblem(tuple(variables), tuple(rules)), var_index, tree)
