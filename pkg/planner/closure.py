"""
Closure of qualitative clauses.

The closure of a clause C is the smallest atom set containing C that is
closed under reflexivity, positive token duration (start(a) < end(a)),
strict-implies-non-strict and transitivity. Over qualitative atoms this is
reachability in the constraint digraph: t <= u is in the closure iff u is
reachable from t, and t < u iff some path from t to u uses a strict edge.

Equivalence classes (t <= u and u <= t) are the strongly connected
components of the closed graph; a clause is consistent iff no t < t.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .models import Atom, SynchronizationRule, Term, end, start, term_key

logger = logging.getLogger(__name__)

Pair = Tuple[Term, Term]


@dataclass(frozen=True)
class ClauseClosure:
    """Closed atom set with equivalence classes and a consistency flag."""

    terms: FrozenSet[Term]
    le: FrozenSet[Pair]
    lt: FrozenSet[Pair]
    classes: Tuple[FrozenSet[Term], ...]
    consistent: bool
    _class_index: Dict[Term, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table = {t: i for i, cls in enumerate(self.classes) for t in cls}
        object.__setattr__(self, "_class_index", table)

    def leq(self, lhs: Term, rhs: Term) -> bool:
        """lhs <= rhs is in the closure (false when either term does not occur)."""
        return (lhs, rhs) in self.le

    def less(self, lhs: Term, rhs: Term) -> bool:
        return (lhs, rhs) in self.lt

    def equiv(self, lhs: Term, rhs: Term) -> bool:
        return self.leq(lhs, rhs) and self.leq(rhs, lhs)

    def occurs(self, term: Term) -> bool:
        return term in self.terms

    def class_index(self, term: Term) -> int:
        return self._class_index[term]

    def class_of(self, term: Term) -> FrozenSet[Term]:
        return self.classes[self._class_index[term]]

    def atoms(self) -> FrozenSet[Atom]:
        """The closure as atoms (every strict atom also has its non-strict twin)."""
        return frozenset(Atom(a, b) for a, b in self.le) | frozenset(
            Atom(a, b, strict=True) for a, b in self.lt
        )

    def token_names(self) -> FrozenSet[str]:
        return frozenset(t.token for t in self.terms)


def close_clause(
    clause: Iterable[Atom],
    trigger: Optional[str] = None,
    anchors: Iterable[Term] = (),
) -> ClauseClosure:
    """
    Compute the closure of a clause.

    Args:
        clause: Qualitative atoms (bounds are ignored)
        trigger: Trigger token name; both its endpoints are treated as occurring
        anchors: Extra terms to treat as occurring even if no atom mentions them

    Returns:
        ClauseClosure; inconsistency is reported through .consistent
    """
    clause = list(clause)
    graph = nx.DiGraph()
    graph.add_nodes_from(anchors)
    if trigger is not None:
        graph.add_nodes_from((start(trigger), end(trigger)))
    strict: Set[Pair] = set()
    for atom in clause:
        graph.add_edge(atom.lhs, atom.rhs)
        if atom.strict:
            strict.add((atom.lhs, atom.rhs))

    terms = frozenset(graph.nodes)
    for name in {t.token for t in terms}:
        if start(name) in terms and end(name) in terms:
            graph.add_edge(start(name), end(name))
            strict.add((start(name), end(name)))

    closed = nx.transitive_closure(graph, reflexive=True)
    le = frozenset(closed.edges())
    lt: Set[Pair] = set()
    for lhs, rhs in strict:
        below = list(closed.predecessors(lhs))
        above = list(closed.successors(rhs))
        lt.update((p, s) for p in below for s in above)
    consistent = not any(a == b for a, b in lt)
    if not consistent:
        logger.debug("inconsistent clause: %s", ", ".join(str(a) for a in clause))

    classes = sorted(
        (frozenset(c) for c in nx.strongly_connected_components(closed)),
        key=lambda c: min(term_key(t) for t in c),
    )
    return ClauseClosure(terms, le, frozenset(lt), tuple(classes), consistent)


def rule_closure(rule: SynchronizationRule, disjunct: int = 0) -> ClauseClosure:
    """
    Closure of one disjunct of a rule.

    Quantified names that no atom mentions (pure existence statements) are
    anchored by their start term so they still get a class of their own.
    """
    statement = rule.disjuncts[disjunct]
    occurring = statement.occurring_names()
    anchors: List[Term] = [start(n) for n in statement.names if n not in occurring]
    return close_clause(statement.clause, rule.trigger_name, anchors)
