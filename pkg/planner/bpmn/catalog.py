"""
Synchronization-rule catalog for SESE block kinds.

Each entry reads "a0[<trigger var> = <value>] => exists a1[<target var> = <value>]. <shape>".
Variables are named by role relative to the block b:
- self: x_b
- flow: x_b_flow (FLOW blocks)
- dec: x_b_dec (XOR blocks)
- a child role (before, after, left, right, body, high, low): that child's x var

Shapes (all reflexive, "=" expands to two <= atoms):
- equal:     start(a0) = start(a1) & end(a0) = end(a1)
- prefix:    start(a0) = start(a1) & end(a1) <= end(a0)   (a1 starts a0)
- suffix:    start(a0) <= start(a1) & end(a1) = end(a0)   (a1 ends a0)
- prefix_of: start(a1) = start(a0) & end(a0) <= end(a1)   (a0 starts a1)
"""

from typing import Dict, List, NamedTuple, Tuple

from ..models import Atom, end, equals, leq, start
from .blocks import BlockKind

TOP = "top"
BOT = "bot"
TOP_BEFORE = "top_before"
TOP_AFTER = "top_after"
TOP_HIGH = "top_high"
TOP_LOW = "top_low"


class RuleTemplate(NamedTuple):
    code: str
    direction: str  # "forward" | "backward"
    trigger: Tuple[str, str]  # (role, value)
    target: Tuple[str, str]
    shape: str


def _t(code: str, trigger: Tuple[str, str], target: Tuple[str, str], shape: str = "equal") -> RuleTemplate:
    direction = "backward" if code[1] == "b" else "forward"
    return RuleTemplate(code, direction, trigger, target, shape)


RULE_CATALOG: Dict[BlockKind, List[RuleTemplate]] = {
    BlockKind.TASK: [],

    BlockKind.FLOW: [
        _t("Ff.1", ("self", TOP), ("flow", TOP_BEFORE), "prefix"),
        _t("Ff.2", ("self", TOP), ("flow", TOP_AFTER), "suffix"),
        _t("Ff.3", ("flow", TOP_BEFORE), ("self", TOP), "prefix_of"),
        _t("Ff.4", ("self", BOT), ("flow", BOT)),
        _t("Ff.5", ("flow", BOT), ("self", BOT)),
        _t("Ff.6", ("flow", TOP_BEFORE), ("before", TOP)),
        _t("Ff.7", ("flow", TOP_AFTER), ("after", TOP)),
        _t("Fb.1", ("before", TOP), ("flow", TOP_BEFORE)),
        _t("Fb.2", ("after", TOP), ("flow", TOP_AFTER)),
    ],

    BlockKind.PARALLEL: [
        _t("Pf.1", ("self", TOP), ("left", TOP)),
        _t("Pf.2", ("self", TOP), ("right", TOP)),
        _t("Pb.1", ("left", TOP), ("self", TOP)),
        _t("Pb.2", ("right", TOP), ("self", TOP)),
    ],

    BlockKind.LOOP: [
        _t("Lf.1", ("self", TOP), ("body", TOP), "prefix"),
        _t("Lf.2", ("self", TOP), ("body", TOP), "suffix"),
        _t("Lf.3", ("self", BOT), ("body", BOT)),
        _t("Lb.1", ("body", BOT), ("self", BOT)),
    ],

    BlockKind.XOR: [
        _t("Xf.1", ("self", BOT), ("dec", BOT)),
        _t("Xf.2", ("dec", BOT), ("self", BOT)),
        _t("Xf.3", ("dec", TOP_HIGH), ("self", TOP)),
        _t("Xf.4", ("dec", TOP_LOW), ("self", TOP)),
        _t("Xf.5", ("dec", TOP_HIGH), ("high", TOP)),
        _t("Xf.6", ("dec", TOP_LOW), ("low", TOP)),
        _t("Xb.1", ("high", TOP), ("dec", TOP_HIGH)),
        _t("Xb.2", ("low", TOP), ("dec", TOP_LOW)),
    ],
}


def shape_atoms(shape: str, a0: str = "a0", a1: str = "a1") -> List[Atom]:
    """Atoms of a catalog shape between trigger a0 and target a1."""
    if shape == "equal":
        return [*equals(start(a0), start(a1)), *equals(end(a0), end(a1))]
    if shape == "prefix":
        return [*equals(start(a0), start(a1)), leq(end(a1), end(a0))]
    if shape == "suffix":
        return [leq(start(a0), start(a1)), *equals(end(a1), end(a0))]
    if shape == "prefix_of":
        return [*equals(start(a1), start(a0)), leq(end(a0), end(a1))]
    raise ValueError(f"unknown shape '{shape}'")


def get_rule_templates(kind: BlockKind) -> List[RuleTemplate]:
    """
    Catalog entries for a block kind, forward rules first.

    Args:
        kind: Block kind

    Returns:
        List of RuleTemplate (empty for TASK)
    """
    return list(RULE_CATALOG[kind])


def list_codes(kind: BlockKind) -> List[str]:
    return [t.code for t in RULE_CATALOG[kind]]


def forward_codes(kind: BlockKind) -> List[str]:
    return [t.code for t in RULE_CATALOG[kind] if t.direction == "forward"]


def backward_codes(kind: BlockKind) -> List[str]:
    return [t.code for t in RULE_CATALOG[kind] if t.direction == "backward"]
