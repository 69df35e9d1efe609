"""
DFA accepting exactly the words that encode plans over a set of state variables.

States:
- INIT: nothing read yet (accepting: the empty word encodes the empty plan)
- SINK: rejecting and absorbing
- Snapshot: per variable the (previous, current) value pair of the last change

States are built lazily and interned on first visit.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..cache import TransitionCache
from ..config import TRANSITION_CACHE_SIZE
from ..models import StateVariable
from ..words import KEEP, Change, EventSet, Symbol, Word, alphabet_size, end_event, initial_alphabet, non_initial_alphabet

logger = logging.getLogger(__name__)


class PlanMarker(Enum):
    INIT = "init"
    SINK = "sink"

    def __repr__(self) -> str:
        return self.name


INIT = PlanMarker.INIT
SINK = PlanMarker.SINK


@dataclass(frozen=True)
class Snapshot:
    """(variable, previous value, current value) triples sorted by variable."""

    pairs: Tuple[Tuple[str, str, str], ...]

    def current(self, var: str) -> str:
        for name, _, cur in self.pairs:
            if name == var:
                return cur
        raise KeyError(var)

    def current_values(self) -> Dict[str, str]:
        return {name: cur for name, _, cur in self.pairs}

    def __str__(self) -> str:
        return ", ".join(f"{n}:{p}>{c}" for n, p, c in self.pairs)


PlanState = Union[PlanMarker, Snapshot]


class PlanAutomaton:
    """Plan-shape automaton over fixed state variables."""

    def __init__(self, variables: Sequence[StateVariable], cache_size: int = TRANSITION_CACHE_SIZE):
        """
        Args:
            variables: State variables of the problem
            cache_size: Transition cache capacity
        """
        self.variables: Tuple[StateVariable, ...] = tuple(sorted(variables, key=lambda v: v.name))
        self.names: Tuple[str, ...] = tuple(v.name for v in self.variables)
        self._by_name: Dict[str, StateVariable] = {v.name: v for v in self.variables}
        self._interned: Dict[PlanState, PlanState] = {INIT: INIT, SINK: SINK}
        self.cache = TransitionCache(cache_size)

    @property
    def initial(self) -> PlanState:
        return INIT

    def intern(self, state: PlanState) -> PlanState:
        return self._interned.setdefault(state, state)

    @property
    def states_seen(self) -> int:
        return len(self._interned)

    def state_bound(self) -> int:
        """Alphabet size plus the two fresh states."""
        return alphabet_size(self.variables) + 2

    # ------------------------------------------------------------------
    # Transition function
    # ------------------------------------------------------------------

    def compatible(self, state: PlanState, symbol: Symbol) -> bool:
        if state is SINK or symbol.variables != self.names:
            return False
        if state is INIT:
            if not symbol.initial:
                return False
            return all(entry.started in self._by_name[var].values for var, entry in symbol.entries)
        if symbol.initial:
            return False
        for (var, entry), (_, _, cur) in zip(symbol.entries, state.pairs):
            if entry is KEEP:
                continue
            if entry.ended != cur or entry.started not in self._by_name[var].successors(cur):
                return False
        return True

    def step(self, state: PlanState, symbol: Symbol) -> PlanState:
        """Successor state; incompatible symbols lead to SINK."""
        key = (state, symbol)
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        if not self.compatible(state, symbol):
            succ: PlanState = SINK
        elif state is INIT:
            succ = Snapshot(tuple((var, e.started, e.started) for var, e in symbol.entries))
        else:
            pairs = []
            for (var, entry), pair in zip(symbol.entries, state.pairs):
                pairs.append(pair if entry is KEEP else (var, entry.ended, entry.started))
            succ = Snapshot(tuple(pairs))
        succ = self.intern(succ)
        self.cache.set(key, succ)
        return succ

    def is_final(self, state: PlanState) -> bool:
        return state is not SINK

    def run(self, symbols: Iterable[Symbol]) -> PlanState:
        state = self.initial
        for symbol in symbols:
            state = self.step(state, symbol)
            if state is SINK:
                break
        return state

    def accepts(self, word: Word) -> bool:
        return self.is_final(self.run(word.symbols))

    # ------------------------------------------------------------------
    # Helpers for search
    # ------------------------------------------------------------------

    def compatible_symbols(self, state: PlanState) -> Iterator[Symbol]:
        """
        Every symbol compatible with state, in canonical order.

        Variables vary slowest-first by name; per variable KEEP comes first,
        then changes in domain declaration order.
        """
        if state is SINK:
            return
        if state is INIT:
            for combo in itertools.product(*[list(v.values) for v in self.variables]):
                yield Symbol.initial_of(dict(zip(self.names, combo)))
            return
        options: List[List] = []
        for var, (_, _, cur) in zip(self.variables, state.pairs):
            succ = var.successors(cur)
            options.append([KEEP] + [Change(cur, v) for v in var.values if v in succ])
        for combo in itertools.product(*options):
            yield Symbol(tuple(zip(self.names, combo)), False)

    def closing_events(self, state: PlanState) -> EventSet:
        """End events of the tokens still open at the end of the word."""
        if not isinstance(state, Snapshot):
            return frozenset()
        return frozenset(end_event(var, cur) for var, _, cur in state.pairs)

    def reachable_graph(self, max_states: Optional[int] = None, include_sink: bool = True) -> nx.MultiDiGraph:
        """
        Breadth-first exploration over the full alphabet.

        Args:
            max_states: Stop after this many states (None explores everything)
            include_sink: Keep the sink state and its incoming edges

        Returns:
            MultiDiGraph whose nodes are states and edges carry a 'symbol' attribute
        """
        graph = nx.MultiDiGraph()
        graph.add_node(INIT)
        queue = deque([INIT])
        initial_symbols = list(initial_alphabet(self.variables))
        later_symbols = list(non_initial_alphabet(self.variables))
        while queue:
            state = queue.popleft()
            if state is SINK:
                continue
            for symbol in initial_symbols if state is INIT else later_symbols:
                succ = self.step(state, symbol)
                if succ is SINK and not include_sink:
                    continue
                if succ not in graph:
                    if max_states is not None and graph.number_of_nodes() >= max_states:
                        continue
                    graph.add_node(succ)
                    queue.append(succ)
                graph.add_edge(state, succ, symbol=symbol)
        logger.debug("plan automaton fragment: %d states", graph.number_of_nodes())
        return graph


def accepts(variables: Sequence[StateVariable], word: Word) -> bool:
    """Whether the word encodes a plan over the given variables."""
    return PlanAutomaton(variables).accepts(word)
