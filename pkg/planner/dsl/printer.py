"""Render planning problems in problem-file syntax."""

import json
import re
from typing import Iterable, List, Optional

from ..models import Atom, ExistentialStatement, PlanningProblem, StateVariable, SynchronizationRule, atom_key

_NAME = re.compile(r"^[A-Za-z_][\w.]*$")
RESERVED = frozenset({"var", "values", "trans", "rule", "exists", "true", "start", "end", "inf"})


def _label(label: str) -> str:
    if _NAME.match(label) and label not in RESERVED:
        return label
    return json.dumps(label)


def _is_free(var: StateVariable) -> bool:
    return var.transitions == tuple((v, var.values) for v in var.values)


def format_variable(var: StateVariable) -> str:
    lines = [f"var {var.name} {{", f"    values {', '.join(var.values)};"]
    if not _is_free(var):
        for value, successors in var.transitions:
            lines.append(f"    trans {value} -> {{{', '.join(successors)}}};")
    lines.append("}")
    return "\n".join(lines)


def format_clause(atoms: Iterable[Atom]) -> str:
    """Conjunction text; pairs a <= b, b <= a collapse into a = b."""
    atoms = sorted(atoms, key=atom_key)
    if not atoms:
        return "true"
    present = set(atoms)
    parts: List[str] = []
    merged = set()
    for atom in atoms:
        if atom in merged:
            continue
        mirror = Atom(atom.rhs, atom.lhs)
        if not atom.strict and atom.bounds is None and mirror in present and mirror != atom:
            merged.add(mirror)
            parts.append(f"{atom.lhs} = {atom.rhs}")
        else:
            parts.append(str(atom))
    return " & ".join(parts)


def format_statement(statement: ExistentialStatement) -> str:
    body = format_clause(statement.clause)
    if not statement.quantifiers:
        return body
    return f"exists {' '.join(str(q) for q in statement.quantifiers)}. {body}"


def format_rule(rule: SynchronizationRule) -> str:
    head = str(rule.trigger) if rule.trigger is not None else "true"
    body = " | ".join(format_statement(d) for d in rule.disjuncts)
    return f"rule {_label(rule.label)}: {head} => {body};" if rule.label else f"rule: {head} => {body};"


def format_problem(problem: PlanningProblem, header: Optional[str] = None) -> str:
    """
    Problem-file text for a problem; parse_problem on the result gives back
    an equal problem.

    Args:
        problem: Problem to render
        header: Optional comment placed on the first lines
    """
    blocks: List[str] = []
    if header:
        blocks.append("\n".join(f"# {line}" for line in header.splitlines()))
    blocks.extend(format_variable(v) for v in problem.variables)
    if problem.rules:
        blocks.append("\n".join(format_rule(r) for r in problem.rules))
    return "\n\n".join(blocks) + "\n"
