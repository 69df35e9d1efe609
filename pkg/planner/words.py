"""
Words over the plan alphabet.

A symbol maps every state variable to one of:
- Change(None, v): an initial entry, a token of value v starts
- Change(v, w): a token of value v ends and one of value w starts
- KEEP: nothing happens on this variable

A word is empty or one initial symbol followed by non-initial symbols; the
position of a symbol is the time at which its events happen, and the word
length is the plan horizon.

Text form (one symbol per line, entries joined by " | "):
    x:->v | y:->w
    x:v>w | y:.
"""

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import ProblemSyntaxError, SymbolError, WordShapeError
from .models import Endpoint, Plan, StateVariable, SynchronizationRule, Timeline, Token, value_universe


class _Keep(Enum):
    KEEP = "keep"

    def __repr__(self) -> str:
        return "KEEP"


KEEP = _Keep.KEEP


@dataclass(frozen=True)
class Change:
    ended: Optional[str]
    started: str


Entry = Union[Change, _Keep]


class Event(NamedTuple):
    kind: Endpoint
    var: str
    value: str

    def __str__(self) -> str:
        return f"{self.kind.value}({self.var},{self.value})"


EventSet = FrozenSet[Event]


def start_event(var: str, value: str) -> Event:
    return Event(Endpoint.START, var, value)


def end_event(var: str, value: str) -> Event:
    return Event(Endpoint.END, var, value)


@dataclass(frozen=True)
class Symbol:
    """One letter: (variable, entry) pairs sorted by variable name."""

    entries: Tuple[Tuple[str, Entry], ...]
    initial: bool

    def __post_init__(self):
        names = [var for var, _ in self.entries]
        if names != sorted(set(names)):
            raise SymbolError(f"symbol entries must be sorted and unique: {names}")
        for var, entry in self.entries:
            if self.initial and not (isinstance(entry, Change) and entry.ended is None):
                raise SymbolError(f"initial symbol needs a (-, v) entry for {var}")
            if not self.initial and isinstance(entry, Change) and entry.ended is None:
                raise SymbolError(f"non-initial symbol has a (-, v) entry for {var}")

    @classmethod
    def initial_of(cls, values: Mapping[str, str]) -> "Symbol":
        return cls(tuple((var, Change(None, values[var])) for var in sorted(values)), True)

    @classmethod
    def of(cls, entries: Mapping[str, Entry]) -> "Symbol":
        """Build a non-initial symbol from {var: Change(v, w) or KEEP}."""
        return cls(tuple((var, entries[var]) for var in sorted(entries)), False)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(var for var, _ in self.entries)

    def entry(self, var: str) -> Entry:
        for name, entry in self.entries:
            if name == var:
                return entry
        raise KeyError(var)

    def changes(self) -> Dict[str, Change]:
        return {var: e for var, e in self.entries if isinstance(e, Change)}

    def __str__(self) -> str:
        return format_symbol(self)


def is_legal_shape(symbols: Sequence[Symbol]) -> bool:
    """Empty, or one initial symbol followed by non-initial symbols."""
    if not symbols:
        return True
    return symbols[0].initial and not any(s.initial for s in symbols[1:])


@dataclass(frozen=True)
class Word:
    symbols: Tuple[Symbol, ...] = ()
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not is_legal_shape(symbols):
            raise WordShapeError("a word is one initial symbol followed by non-initial symbols")
        variables = tuple(sorted(self.variables)) if self.variables else (symbols[0].variables if symbols else ())
        object.__setattr__(self, "variables", variables)
        for i, s in enumerate(symbols):
            if s.variables != variables:
                raise WordShapeError(f"symbol {i} covers {s.variables}, expected {variables}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __getitem__(self, index: int) -> Symbol:
        return self.symbols[index]

    def extended(self, more: Iterable[Symbol]) -> "Word":
        return Word(self.symbols + tuple(more), self.variables)


# ============================================================================
# Events
# ============================================================================


@lru_cache(maxsize=65536)
def events(symbol: Symbol) -> EventSet:
    """Token endings and beginnings a symbol carries."""
    out = set()
    for var, entry in symbol.entries:
        if isinstance(entry, Change):
            if entry.ended is not None:
                out.add(end_event(var, entry.ended))
            out.add(start_event(var, entry.started))
    return frozenset(out)


def triggers(symbol: Symbol, rule: SynchronizationRule) -> bool:
    """Whether the symbol starts a token matching the rule's trigger."""
    if rule.trigger is None:
        return False
    return start_event(rule.trigger.var, rule.trigger.value) in events(symbol)


# ============================================================================
# Plans <-> words
# ============================================================================


def decode(word: Word) -> Optional[Plan]:
    """
    Read the plan a word weakly encodes.

    Returns:
        The induced plan, or None when some change ends a value other than
        the one the previous change on that variable started
    """
    if not word.symbols:
        return Plan.empty(word.variables)
    horizon = len(word.symbols)
    timelines = []
    for var in word.variables:
        changes = [
            (i, s.entry(var)) for i, s in enumerate(word.symbols) if isinstance(s.entry(var), Change)
        ]
        tokens = []
        for h, (i, change) in enumerate(changes):
            if h > 0 and change.ended != changes[h - 1][1].started:
                return None
            upto = changes[h + 1][0] if h + 1 < len(changes) else horizon
            tokens.append(Token(var, change.started, upto - i))
        timelines.append(Timeline(var, tuple(tokens)))
    return Plan(tuple(timelines), horizon)


def encode(plan: Plan) -> Word:
    """Word whose decoding is the given (valid) plan."""
    variables = plan.variables
    if plan.horizon == 0:
        return Word((), variables)
    per_time: List[Dict[str, Entry]] = [dict() for _ in range(plan.horizon)]
    for timeline in plan.timelines:
        clock = 0
        previous: Optional[str] = None
        for token in timeline.tokens:
            per_time[clock][timeline.var] = Change(previous, token.value)
            previous = token.value
            clock += token.duration
    symbols = [Symbol(tuple((var, e[var]) for var in sorted(e)), True) for e in per_time[:1]]
    for table in per_time[1:]:
        symbols.append(Symbol.of({var: table.get(var, KEEP) for var in variables}))
    return Word(tuple(symbols), variables)


def alphabet_size(variables: Sequence[StateVariable]) -> int:
    """|V|^n + (|V|^2 + 1)^n with V the union of all domains and n the variable count."""
    universe = value_universe(variables)
    n = len(variables)
    return len(universe) ** n + (len(universe) ** 2 + 1) ** n


# ============================================================================
# Enumeration
# ============================================================================


def initial_alphabet(variables: Sequence[StateVariable]) -> Iterator[Symbol]:
    """Every initial symbol over the value universe, in canonical order."""
    names = sorted(v.name for v in variables)
    universe = value_universe(variables)
    for combo in itertools.product(universe, repeat=len(names)):
        yield Symbol.initial_of(dict(zip(names, combo)))


def non_initial_alphabet(variables: Sequence[StateVariable]) -> Iterator[Symbol]:
    """Every non-initial symbol over the value universe, KEEP first per variable."""
    names = sorted(v.name for v in variables)
    universe = value_universe(variables)
    options: List[Entry] = [KEEP] + [Change(v, w) for v in universe for w in universe]
    for combo in itertools.product(options, repeat=len(names)):
        yield Symbol(tuple(zip(names, combo)), False)


def all_words(variables: Sequence[StateVariable], max_len: int) -> Iterator[Word]:
    """Every legally shaped word of length <= max_len (exponential; tests only)."""
    names = tuple(sorted(v.name for v in variables))
    yield Word((), names)
    if max_len < 1:
        return
    tail = list(non_initial_alphabet(variables))
    for first in initial_alphabet(variables):
        for length in range(0, max_len):
            for rest in itertools.product(tail, repeat=length):
                yield Word((first, *rest), names)


# ============================================================================
# Text form
# ============================================================================

_ENTRY = re.compile(r"^\s*(?P<var>[A-Za-z_][\w.]*)\s*:\s*(?:(?P<keep>\.)|(?P<ended>-|[\w.]+)\s*>\s*(?P<started>[\w.]+))\s*$")


def format_entry(var: str, entry: Entry) -> str:
    if entry is KEEP:
        return f"{var}:."
    ended = "-" if entry.ended is None else entry.ended
    return f"{var}:{ended}>{entry.started}"


def format_symbol(symbol: Symbol) -> str:
    return " | ".join(format_entry(var, e) for var, e in symbol.entries)


def format_word(word: Word) -> str:
    return "".join(format_symbol(s) + "\n" for s in word.symbols)


def parse_symbol(line: str, line_no: int = 1) -> Symbol:
    entries: Dict[str, Entry] = {}
    for part in line.split("|"):
        match = _ENTRY.match(part)
        if match is None:
            raise ProblemSyntaxError(f"cannot read symbol entry {part.strip()!r}", line_no, 1)
        var = match.group("var")
        if var in entries:
            raise ProblemSyntaxError(f"variable {var} appears twice", line_no, 1)
        if match.group("keep"):
            entries[var] = KEEP
        else:
            ended = match.group("ended")
            entries[var] = Change(None if ended == "-" else ended, match.group("started"))
    initial = all(isinstance(e, Change) and e.ended is None for e in entries.values())
    try:
        return Symbol(tuple((var, entries[var]) for var in sorted(entries)), initial)
    except SymbolError as e:
        raise ProblemSyntaxError(str(e), line_no, 1)


def parse_word(text: str, variables: Sequence[str] = ()) -> Word:
    """
    Read the text form of a word.

    Blank lines and '#' comments are ignored. An empty text is the empty
    word over the given variables.
    """
    symbols = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            symbols.append(parse_symbol(line, line_no))
    try:
        return Word(tuple(symbols), tuple(variables))
    except WordShapeError as e:
        raise ProblemSyntaxError(str(e))
