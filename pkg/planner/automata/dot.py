"""
Graphviz DOT export for automaton fragments and rule DAGs.

States are numbered q0, q1, ... in graph insertion order, so exports of the
same fragment are byte-identical. Parallel edges between two states are
merged into one edge with one label line per symbol.
"""

import io
from typing import Callable, Dict, Hashable, List, Optional, Tuple

import networkx as nx

from ..config import FEATURE_FLAGS
from ..words import format_symbol
from .plan_automaton import INIT, SINK, PlanAutomaton
from .product import ProductAutomaton, ProductState
from .rule_automaton import RULE_SINK, RuleDag

INDENT = "    "


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def graph_to_dot(
    graph: nx.MultiDiGraph,
    name: str,
    initial: Hashable,
    is_final: Callable[[Hashable], bool],
    state_label: Callable[[Hashable], str] = str,
    hide: Callable[[Hashable], bool] = lambda state: False,
) -> str:
    """Render a state graph whose edges carry a 'symbol' attribute."""
    ids: Dict[Hashable, str] = {}
    for state in graph.nodes:
        if not hide(state):
            ids[state] = f"q{len(ids)}"

    output = io.StringIO()
    output.write(f"digraph {_quote(name)} {{\n")
    output.write(INDENT + "rankdir=LR;\n")
    output.write(INDENT + 'start [label="" shape=plaintext];\n')
    for state, ident in ids.items():
        shape = "doublecircle" if is_final(state) else "circle"
        output.write(f"{INDENT}{ident} [shape={shape} label={_quote(state_label(state))}];\n")
    if initial in ids:
        output.write(f"{INDENT}start -> {ids[initial]};\n")

    merged: Dict[Tuple[str, str], List[str]] = {}
    for src, dst, data in graph.edges(data=True):
        if src not in ids or dst not in ids:
            continue
        merged.setdefault((ids[src], ids[dst]), []).append(format_symbol(data["symbol"]))
    for (src, dst), labels in merged.items():
        output.write(f"{INDENT}{src} -> {dst} [label={_quote(chr(10).join(labels))}];\n")
    output.write("}\n")
    return output.getvalue()


def _hide_sink(hide_sink: Optional[bool]) -> bool:
    return FEATURE_FLAGS["dot_hide_sink"] if hide_sink is None else hide_sink


def plan_fragment_dot(
    automaton: PlanAutomaton, max_states: Optional[int] = None, hide_sink: Optional[bool] = None
) -> str:
    """DOT for the reachable part of the plan-shape automaton."""
    hidden = _hide_sink(hide_sink)
    graph = automaton.reachable_graph(max_states=max_states, include_sink=not hidden)
    return graph_to_dot(
        graph,
        "plan automaton",
        INIT,
        automaton.is_final,
        state_label=lambda s: s.name if s in (INIT, SINK) else str(s),
        hide=lambda s: hidden and s is SINK,
    )


def _product_label(state: ProductState) -> str:
    plan = state.plan_part.name if state.plan_part in (INIT, SINK) else str(state.plan_part)
    if state.rule_part is RULE_SINK:
        return f"{plan}\nSINK"
    viewpoints = sorted(str(vp) for vp in state.rule_part)
    return "\n".join([plan] + viewpoints)


def product_dot(graph: nx.MultiDiGraph, product: ProductAutomaton, hide_sink: Optional[bool] = None) -> str:
    """DOT for a product fragment recorded by the solver."""
    hidden = _hide_sink(hide_sink)
    return graph_to_dot(
        graph,
        "product",
        product.initial,
        product.is_final,
        state_label=_product_label,
        hide=lambda s: hidden and s.is_sink,
    )


def rule_dag_dot(dag: RuleDag) -> str:
    """DOT for a rule DAG: solid arcs are strict, dashed arcs non-strict."""
    output = io.StringIO()
    output.write(f"digraph {_quote(dag.label)} {{\n")
    output.write(INDENT + "rankdir=LR;\n")
    output.write(INDENT + "node [shape=box];\n")
    for n in range(len(dag.nodes)):
        events = ", ".join(sorted(str(e) for e in dag.labels[n]))
        attrs = f"label={_quote(dag.node_name(n) + chr(10) + events)}"
        if n == dag.trigger_node:
            attrs += " peripheries=2"
        output.write(f"{INDENT}n{n} [{attrs}];\n")
    for i, j in sorted(dag.arcs):
        style = "solid" if (i, j) in dag.strict_arcs else "dashed"
        output.write(f"{INDENT}n{i} -> n{j} [style={style}];\n")
    output.write("}\n")
    return output.getvalue()
