"""
Emergency Department case study: tree, hand-built plans, mutations, and the
patient-condition overlay.

Both plans have horizon 11. Variables of the branch not taken are disabled
for the whole horizon; disabled phases of the others align with the phase
changes of their parents.
"""

from pathlib import Path
from typing import Dict, List, Tuple

from ..models import ExistentialStatement, Plan, PlanningProblem, StateVariable, SynchronizationRule, TokenPattern
from .blocks import SeseBlock, load_tree
from .catalog import BOT, TOP, TOP_AFTER, TOP_BEFORE, TOP_HIGH, TOP_LOW, shape_atoms
from .compiler import CompiledProblem, block_var, compile_tree, dec_var, flow_var

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
ED_TREE_FILE = DATA_DIR / "emergency_department.json"

HORIZON = 11

CONDITION_VAR = "x_condition"
UNSTABLE = "unstable"
STABLE = "stable"

Segments = Dict[str, List[Tuple[str, int]]]


def emergency_department_tree() -> SeseBlock:
    return load_tree(ED_TREE_FILE)


def emergency_department_problem() -> CompiledProblem:
    return compile_tree(emergency_department_tree())


def _shared_segments() -> Segments:
    """Root, assessment, triage, classification and discharge phases."""
    return {
        block_var("b1"): [(TOP, 11)],
        flow_var("b1"): [(TOP_BEFORE, 9), (TOP_AFTER, 2)],
        block_var("b2"): [(TOP, 9), (BOT, 2)],
        flow_var("b2"): [(TOP_BEFORE, 2), (TOP_AFTER, 7), (BOT, 2)],
        block_var("b15"): [(TOP, 2), (BOT, 9)],
        block_var("b3"): [(BOT, 2), (TOP, 7), (BOT, 2)],
        block_var("b16"): [(BOT, 9), (TOP, 2)],
    }


def _idle(*names: str) -> Segments:
    return {name: [(BOT, HORIZON)] for name in names}


def critical_plan() -> Plan:
    """Critical path: tests and imaging in parallel over 2-6, treatment 6-9."""
    segments = _shared_segments()
    segments.update(
        {
            dec_var("b3"): [(BOT, 2), (TOP_HIGH, 7), (BOT, 2)],
            block_var("b4"): [(BOT, 2), (TOP, 7), (BOT, 2)],
            flow_var("b4"): [(BOT, 2), (TOP_BEFORE, 4), (TOP_AFTER, 3), (BOT, 2)],
            block_var("b5"): [(BOT, 2), (TOP, 4), (BOT, 5)],
            block_var("b11"): [(BOT, 2), (TOP, 4), (BOT, 5)],
            block_var("b12"): [(BOT, 2), (TOP, 4), (BOT, 5)],
            block_var("b6"): [(BOT, 6), (TOP, 3), (BOT, 2)],
        }
    )
    segments.update(_idle(block_var("b7"), flow_var("b7"), block_var("b8"), block_var("b9"), block_var("b13")))
    return Plan.from_segments(segments)


def non_critical_plan() -> Plan:
    """Standard care 2-4, then monitoring iterations 4-7 and 7-9."""
    segments = _shared_segments()
    segments.update(
        {
            dec_var("b3"): [(BOT, 2), (TOP_LOW, 7), (BOT, 2)],
            block_var("b7"): [(BOT, 2), (TOP, 7), (BOT, 2)],
            flow_var("b7"): [(BOT, 2), (TOP_BEFORE, 2), (TOP_AFTER, 5), (BOT, 2)],
            block_var("b8"): [(BOT, 2), (TOP, 2), (BOT, 7)],
            block_var("b9"): [(BOT, 4), (TOP, 5), (BOT, 2)],
            block_var("b13"): [(BOT, 4), (TOP, 3), (TOP, 2), (BOT, 2)],
        }
    )
    segments.update(
        _idle(block_var("b4"), flow_var("b4"), block_var("b5"), block_var("b11"), block_var("b12"), block_var("b6"))
    )
    return Plan.from_segments(segments)


def fixture_plans() -> Dict[str, Plan]:
    return {"critical": critical_plan(), "non_critical": non_critical_plan()}


# ============================================================================
# Mutations
# ============================================================================


def drop_root_after_phase(plan: Plan) -> Plan:
    """Stretch the root flow's top_before phase over the whole horizon."""
    return plan.replace(flow_var("b1"), [(TOP_BEFORE, plan.horizon)])


def drop_last_monitoring_iteration(plan: Plan) -> Plan:
    """Replace the final monitoring token with a disabled one."""
    segments = plan.segments()[block_var("b13")]
    kept = segments[:-2] + [(BOT, segments[-2][1] + segments[-1][1])]
    return plan.replace(block_var("b13"), kept)


# ============================================================================
# Patient-condition overlay
# ============================================================================


def condition_variable() -> StateVariable:
    return StateVariable.of(CONDITION_VAR, [UNSTABLE, STABLE], {UNSTABLE: [STABLE, UNSTABLE], STABLE: [STABLE]})


def condition_rules() -> List[SynchronizationRule]:
    def rule(label: str, block_id: str, value: str, shape: str) -> SynchronizationRule:
        return SynchronizationRule(
            trigger=TokenPattern("a0", block_var(block_id), TOP),
            disjuncts=(
                ExistentialStatement(
                    quantifiers=(TokenPattern("a1", CONDITION_VAR, value),),
                    clause=frozenset(shape_atoms(shape)),
                ),
            ),
            label=label,
        )

    return [
        rule("condition:critical", "b4", UNSTABLE, "prefix"),
        rule("condition:discharge", "b16", STABLE, "equal"),
    ]


def enrich_with_patient_condition(compiled: CompiledProblem) -> CompiledProblem:
    """Add the condition variable and its two rules to a compiled ED problem."""
    problem = compiled.problem
    enriched = PlanningProblem(
        problem.variables + (condition_variable(),),
        problem.rules + tuple(condition_rules()),
    )
    var_index = dict(compiled.var_index)
    var_index["condition"] = (CONDITION_VAR,)
    return CompiledProblem(enriched, var_index, compiled.root)


def condition_segments() -> List[Tuple[str, int]]:
    return [(UNSTABLE, 2), (UNSTABLE, 7), (STABLE, 2)]


def enrich_plan(plan: Plan) -> Plan:
    """Add the condition timeline matching both fixture plans."""
    segments = plan.segments()
    segments[CONDITION_VAR] = condition_segments()
    return Plan.from_segments(segments)
