"""
Problem-file parser.

The grammar lives next to this module in problem.lark; a lark LALR parser
builds a tree which _ProblemBuilder turns into model objects. Integer
terms and bounded atoms belong to the quantitative fragment: integer terms
are rejected here, bounded atoms are kept (with their bounds) so that
validate_problem can report them against the rule that carries them.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Union

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from ..errors import ProblemSyntaxError
from ..models import (
    Atom,
    ExistentialStatement,
    PlanningProblem,
    StateVariable,
    SynchronizationRule,
    Term,
    TokenPattern,
    end,
    equals,
    start,
)

logger = logging.getLogger(__name__)

GRAMMAR_FILE = Path(__file__).resolve().parent / "problem.lark"
FORMAT_VERSION = 1


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR_FILE.read_text(encoding="utf-8"), start="problem", parser="lalr", maybe_placeholders=True)


class _ProblemBuilder(Transformer):
    """Bottom-up construction of a PlanningProblem from the parse tree."""

    # ------------------------------------------------------------------
    # Variables
    # ------------------------------------------------------------------

    def names(self, items: List[Token]) -> List[str]:
        return [str(t) for t in items]

    def values_stmt(self, items):
        return items[0]

    def trans_stmt(self, items):
        value, successors = items
        return str(value), successors or []

    def var_decl(self, items) -> StateVariable:
        name, values, *trans = items
        if not trans:
            return StateVariable.of(str(name), values)
        table: Dict[str, List[str]] = {}
        for value, successors in trans:
            known = table.setdefault(value, [])
            for s in successors:
                if s not in known:
                    known.append(s)
        return StateVariable.of(str(name), values, table)

    # ------------------------------------------------------------------
    # Terms and atoms
    # ------------------------------------------------------------------

    def start_term(self, items) -> Term:
        return start(str(items[0]))

    def end_term(self, items) -> Term:
        return end(str(items[0]))

    def const_term(self, items):
        tok = items[0]
        raise ProblemSyntaxError(
            f"integer term {tok} is outside the qualitative fragment", tok.line, tok.column
        )

    def leq(self, items) -> List[Atom]:
        return [Atom(items[0], items[1])]

    def less(self, items) -> List[Atom]:
        return [Atom(items[0], items[1], strict=True)]

    def same(self, items) -> List[Atom]:
        return list(equals(items[0], items[1]))

    def finite(self, items) -> int:
        return int(items[0])

    def infinite(self, items) -> None:
        return None

    def bounds(self, items):
        return int(items[0]), items[1]

    def bounded(self, items) -> List[Atom]:
        lhs, bounds, rhs = items
        # [0, inf] is the plain qualitative atom
        if bounds == (0, None):
            return [Atom(lhs, rhs)]
        return [Atom(lhs, rhs, bounds=bounds)]

    # ------------------------------------------------------------------
    # Rules
    # ------------------------------------------------------------------

    def conjunction(self, items):
        return frozenset(atom for group in items for atom in group)

    def empty_clause(self, items):
        return frozenset()

    def pattern(self, items) -> TokenPattern:
        name, var, value = (str(t) for t in items)
        return TokenPattern(name, var, value)

    def quantified(self, items) -> ExistentialStatement:
        *patterns, clause = items
        return ExistentialStatement(quantifiers=tuple(patterns), clause=clause)

    def unquantified(self, items) -> ExistentialStatement:
        return ExistentialStatement(clause=items[0])

    def triggered(self, items):
        return items[0]

    def triggerless(self, items):
        return None

    def label(self, items) -> str:
        tok = items[0]
        if tok.type == "ESCAPED_STRING":
            return json.loads(str(tok))
        return str(tok)

    def rule_decl(self, items) -> SynchronizationRule:
        label, trigger, *disjuncts = items
        return SynchronizationRule(trigger=trigger, disjuncts=tuple(disjuncts), label=label or "")

    def problem(self, items) -> PlanningProblem:
        variables = tuple(i for i in items if isinstance(i, StateVariable))
        rules = tuple(i for i in items if isinstance(i, SynchronizationRule))
        return PlanningProblem(variables, rules)


def _position(text: str, error: UnexpectedInput):
    line = getattr(error, "line", -1)
    column = getattr(error, "column", -1)
    if line is None or line < 1:
        lines = text.splitlines() or [""]
        return len(lines), len(lines[-1]) + 1
    return line, column


def _describe(error: UnexpectedInput) -> str:
    if isinstance(error, UnexpectedEOF):
        return "unexpected end of input"
    if isinstance(error, UnexpectedCharacters):
        return f"unexpected character {error.char!r}"
    token = getattr(error, "token", None)
    if token is not None and token.type == "$END":
        return "unexpected end of input"
    expected = sorted(getattr(error, "expected", ()) or ())
    hint = f" (expected {', '.join(expected[:6])})" if expected else ""
    return f"unexpected {token!s}{hint}" if token is not None else "syntax error"


def parse_problem(text: str) -> PlanningProblem:
    """
    Parse problem-file text.

    Args:
        text: Problem in the planner's problem-file syntax

    Returns:
        PlanningProblem with variables and rules in file order

    Raises:
        ProblemSyntaxError: With line and column of the first offending token
    """
    try:
        tree = _parser().parse(text)
    except UnexpectedInput as e:
        line, column = _position(text, e)
        raise ProblemSyntaxError(_describe(e), line, column) from e
    try:
        problem = _ProblemBuilder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ProblemSyntaxError):
            raise e.orig_exc from None
        raise
    logger.debug("parsed %d variables, %d rules", len(problem.variables), len(problem.rules))
    return problem


def load_problem(path: Union[str, Path]) -> PlanningProblem:
    """Read and parse a problem file."""
    return parse_problem(Path(path).read_text(encoding="utf-8"))
