"""
Allen interval relations as synchronization rules.

Each relation between two tokens a and b is encoded as a conjunction of
atoms over their endpoints; inverse relations swap the roles of a and b.
The reflexive variant of a relation replaces every strict atom by its
non-strict counterpart.

allen_table() classifies the 21 (relation, trigger) combinations of the
seven base relations; format_table_text/format_table_csv render it in the
shipped golden formats.
"""

import csv
import io
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .closure import rule_closure
from .eagerness import classify_disjunct
from .models import (
    Atom,
    ExistentialStatement,
    SynchronizationRule,
    Term,
    TokenPattern,
    end,
    equals,
    start,
)

RELATIONS = ("before", "meets", "ends", "starts", "overlaps", "during", "equal")

INVERSES = {
    "after": "before",
    "met_by": "meets",
    "ended_by": "ends",
    "started_by": "starts",
    "overlapped_by": "overlaps",
    "contains": "during",
}

TRIGGER_ROLES = ("a", "b", "none")

RELATION_LABELS = {
    "before": "a before b",
    "meets": "a meets b",
    "ends": "a ends b",
    "starts": "a starts b",
    "overlaps": "a overlaps b",
    "during": "a during b",
    "equal": "a = b",
}

PATTERNS = {
    "a": TokenPattern("a", "x_a", "v_a"),
    "b": TokenPattern("b", "x_b", "v_b"),
}


def _base_atoms(relation: str, x: str, y: str, reflexive: bool) -> List[Atom]:
    """Atoms for `x relation y` with relation one of RELATIONS."""
    strict = not reflexive
    if relation == "before":
        return [Atom(end(x), start(y), strict)]
    if relation == "meets":
        return list(equals(end(x), start(y)))
    if relation == "ends":
        return [Atom(start(y), start(x), strict), *equals(end(x), end(y))]
    if relation == "starts":
        return [*equals(start(x), start(y)), Atom(end(x), end(y), strict)]
    if relation == "overlaps":
        return [
            Atom(start(x), start(y), strict),
            Atom(start(y), end(x), strict),
            Atom(end(x), end(y), strict),
        ]
    if relation == "during":
        return [Atom(start(y), start(x), strict), Atom(end(x), end(y), strict)]
    if relation == "equal":
        return [*equals(start(x), start(y)), *equals(end(x), end(y))]
    raise ValueError(f"Unknown Allen relation: {relation}")


def relation_atoms(relation: str, reflexive: bool = False) -> List[Atom]:
    """Atoms of `a relation b` over token names a and b (inverses included)."""
    if relation in INVERSES:
        return _base_atoms(INVERSES[relation], "b", "a", reflexive)
    return _base_atoms(relation, "a", "b", reflexive)


def allen_encoding(relation: str, reflexive: bool = False, trigger_role: str = "a") -> SynchronizationRule:
    """
    Encode `a relation b` as a synchronization rule.

    Args:
        relation: A base relation or one of its inverses
        reflexive: Use non-strict atoms throughout
        trigger_role: "a", "b" or "none" (triggerless)

    Returns:
        Rule whose trigger is the chosen token and whose single disjunct
        quantifies the other token(s)
    """
    if trigger_role not in TRIGGER_ROLES:
        raise ValueError(f"trigger_role must be one of {TRIGGER_ROLES}, got {trigger_role!r}")
    atoms = relation_atoms(relation, reflexive)
    trigger = PATTERNS[trigger_role] if trigger_role != "none" else None
    quantified = tuple(p for role, p in PATTERNS.items() if role != trigger_role)
    if trigger is not None:
        mentioned = {t for atom in atoms for t in (atom.lhs, atom.rhs)}
        if not {start(trigger.name), end(trigger.name)} <= mentioned:
            atoms.append(Atom(start(trigger.name), end(trigger.name), strict=True))
    statement = ExistentialStatement(quantified, frozenset(atoms))
    suffix = " (reflexive)" if reflexive else ""
    return SynchronizationRule(trigger, (statement,), f"{relation}/{trigger_role}{suffix}")


# ============================================================================
# Table
# ============================================================================


@dataclass(frozen=True)
class TokenCells:
    """left/right/ambiguous verdicts; all None for the trigger token."""

    left: Optional[bool]
    right: Optional[bool]
    ambiguous: Optional[bool]


@dataclass(frozen=True)
class AllenRow:
    number: int
    relation: str
    trigger: str
    a: TokenCells
    b: TokenCells

    @property
    def overall(self) -> bool:
        return bool(self.a.ambiguous) or bool(self.b.ambiguous)

    @property
    def label(self) -> str:
        return RELATION_LABELS[self.relation]


def table_rows() -> List[Tuple[str, str]]:
    """(relation, trigger role) in table order."""
    return [(relation, role) for relation in RELATIONS for role in TRIGGER_ROLES]


def allen_table(reflexive: bool = False) -> List[AllenRow]:
    """Classify every (relation, trigger) combination of the base relations."""
    rows = []
    for number, (relation, role) in enumerate(table_rows(), start=1):
        rule = allen_encoding(relation, reflexive, role)
        cells: Dict[str, TokenCells] = {}
        for verdict in classify_disjunct(rule):
            cells[verdict.name] = TokenCells(verdict.left, verdict.right, verdict.ambiguous)
        rows.append(AllenRow(number, relation, role, cells["a"], cells["b"]))
    return rows


def _cell(value: Optional[bool]) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


def _row_cells(row: AllenRow) -> List[str]:
    return [
        str(row.number),
        row.label,
        row.trigger,
        _cell(row.a.left),
        _cell(row.a.right),
        _cell(row.a.ambiguous),
        _cell(row.b.left),
        _cell(row.b.right),
        _cell(row.b.ambiguous),
        _cell(row.overall),
    ]


TABLE_HEADER = ["#", "relation", "trigger", "a:left", "a:right", "a:amb", "b:left", "b:right", "b:amb", "overall"]

CSV_HEADER = [
    "row", "relation", "trigger",
    "a_left", "a_right", "a_ambiguous",
    "b_left", "b_right", "b_ambiguous",
    "overall",
]


def _text_line(c: List[str]) -> str:
    return (
        f"{c[0]:>2}  {c[1]:<12}  {c[2]:<7}  "
        f"{c[3]:<6} {c[4]:<7} {c[5]:<5}  "
        f"{c[6]:<6} {c[7]:<7} {c[8]:<5}  {c[9]}"
    )


def format_table_text(rows: List[AllenRow]) -> str:
    """Aligned text table, one line per row after a header line."""
    lines = [_text_line(TABLE_HEADER)]
    lines.extend(_text_line(_row_cells(r)) for r in rows)
    return "\n".join(lines) + "\n"


def format_table_csv(rows: List[AllenRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(_row_cells(r))
    return buffer.getvalue()


# ============================================================================
# Shape recognition
# ============================================================================


def _signature(rule: SynchronizationRule, rename: Dict[str, str]) -> Tuple[FrozenSet, FrozenSet]:
    cl = rule_closure(rule)

    def term(t: Term) -> Term:
        return Term(t.endpoint, rename[t.token])

    le = frozenset((term(p), term(q)) for p, q in cl.le)
    lt = frozenset((term(p), term(q)) for p, q in cl.lt)
    return le, lt


@dataclass(frozen=True)
class AllenShape:
    row: int
    relation: str
    trigger: str
    reflexive: bool


def allen_shape(rule: SynchronizationRule) -> Optional[AllenShape]:
    """
    Recognise which table row a two-token, single-disjunct rule encodes.

    The rule's closure is compared with the closure of every encoding,
    trying both ways of naming its tokens a and b; strict encodings are
    tried before reflexive ones. For a symmetric relation (equal) the
    trigger side follows the rule's own token names when they are a and b,
    and defaults to the lower row otherwise.

    Returns:
        The matching AllenShape, or None when the rule is not an Allen encoding
    """
    if len(rule.disjuncts) != 1:
        return None
    names = ([rule.trigger.name] if rule.trigger is not None else []) + list(rule.disjuncts[0].names)
    if len(names) != 2:
        return None
    first, second = names
    candidates = []
    for role in TRIGGER_ROLES:
        if (role == "none") != (rule.trigger is None):
            continue
        if role == "b":
            candidates.append((role, {first: "b", second: "a"}))
        else:
            candidates.append((role, {first: "a", second: "b"}))
            if role == "none":
                candidates.append((role, {first: "b", second: "a"}))

    # symmetric relations match two rows; the naming the rule already uses wins
    named = [c for c in candidates if all(k == v for k, v in c[1].items())]
    renamed = [c for c in candidates if c not in named]
    for reflexive in (False, True):
        for group in (named, renamed):
            for number, (relation, role) in enumerate(table_rows(), start=1):
                target = _signature(allen_encoding(relation, reflexive, role), {"a": "a", "b": "b"})
                for cand_role, rename in group:
                    if cand_role == role and _signature(rule, rename) == target:
                        return AllenShape(number, relation, role, reflexive)
    return None
