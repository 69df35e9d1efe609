"""
Lower-bound experiment for non-eager problems.

Builds the disjunctive family P_n, the W_n prefix words (x0 carries
duration-2 v0 tokens, every other variable a duration-1 bar token followed
by duration-2 tokens), and the one-symbol extensions. Prefixes with
distinct supports of floor(n/2)-subsets are shown pairwise distinguished
by an explicit extension, every verdict coming from the semantic oracle
and cross-checked against the closed form "every mu_i meets mu".
"""

import csv
import io
import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .config import LOWERBOUND_MAX_N
from .errors import StatementMismatchError
from .models import (
    ExistentialStatement,
    PlanningProblem,
    StateVariable,
    SynchronizationRule,
    TokenPattern,
    end,
    leq,
    start,
)
from .oracle import verify_solution
from .words import KEEP, Change, Entry, Symbol, Word, decode

logger = logging.getLogger(__name__)

Subset = FrozenSet[int]


def var_name(i: int) -> str:
    return f"x{i}"


def plain(i: int) -> str:
    return f"v{i}"


def primed(i: int) -> str:
    return f"v{i}p"


def barred(i: int) -> str:
    return f"v{i}bar"


@dataclass(frozen=True)
class PnInstance:
    n: int
    problem: PlanningProblem

    @property
    def rule(self) -> SynchronizationRule:
        return self.problem.rules[0]


def build_pn(n: int) -> PnInstance:
    """
    The problem with variables x0..xn, free transitions and the single rule

        a0[x0=v0] => OR_j exists aj[xj=vj] ajp[xj=vjp].
            start(a0) <= start(aj) & start(aj) <= end(a0) & end(a0) <= start(ajp)
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    variables = [StateVariable.of(var_name(0), [plain(0), barred(0)])]
    variables += [StateVariable.of(var_name(j), [plain(j), primed(j), barred(j)]) for j in range(1, n + 1)]
    disjuncts = []
    for j in range(1, n + 1):
        a, ap = f"a{j}", f"a{j}p"
        disjuncts.append(
            ExistentialStatement(
                quantifiers=(TokenPattern(a, var_name(j), plain(j)), TokenPattern(ap, var_name(j), primed(j))),
                clause=frozenset(
                    {
                        leq(start("a0"), start(a)),
                        leq(start(a), end("a0")),
                        leq(end("a0"), start(ap)),
                    }
                ),
            )
        )
    rule = SynchronizationRule(TokenPattern("a0", var_name(0), plain(0)), tuple(disjuncts), label=f"P{n}")
    return PnInstance(n, PlanningProblem(tuple(variables), (rule,)))


# ============================================================================
# Words
# ============================================================================


@dataclass(frozen=True)
class WnSpec:
    """A W_n prefix given by its sequence of subsets mu_1 ... mu_k of {1..n}."""

    n: int
    mus: Tuple[Subset, ...] = ()

    @classmethod
    def of(cls, n: int, mus: Iterable[Iterable[int]]) -> "WnSpec":
        return cls(n, tuple(frozenset(mu) for mu in mus))

    @property
    def support(self) -> FrozenSet[Subset]:
        return frozenset(self.mus)


@dataclass(frozen=True)
class LambdaExt:
    """A one-symbol extension; j in mu means x_j starts a primed token."""

    n: int
    mu: Subset = frozenset()

    @classmethod
    def of(cls, n: int, mu: Iterable[int]) -> "LambdaExt":
        return cls(n, frozenset(mu))


def _names(n: int) -> Tuple[str, ...]:
    return tuple(sorted(var_name(i) for i in range(n + 1)))


def wn_word(spec: WnSpec) -> Word:
    """
    The W_n word for spec, of length 2*len(mus) + 1.

    With no mus the word is the single initial symbol with every variable
    on its bar value (the member with empty support).
    """
    n = spec.n
    h = 2 * len(spec.mus)
    if h == 0:
        first = {var_name(0): barred(0)}
    else:
        first = {var_name(0): plain(0)}
    first.update({var_name(j): barred(j) for j in range(1, n + 1)})
    symbols = [Symbol.initial_of(first)]
    current = dict(first)
    for i in range(1, h + 1):
        entries: Dict[str, Entry] = {}
        if i % 2 == 1:
            entries[var_name(0)] = KEEP
        else:
            entries[var_name(0)] = Change(plain(0), barred(0) if i == h else plain(0))
        for j in range(1, n + 1):
            x = var_name(j)
            if i % 2 == 0:
                entries[x] = KEEP
                continue
            value = plain(j) if j in spec.mus[i // 2] else barred(j)
            entries[x] = Change(current[x], value)
            current[x] = value
        current[var_name(0)] = barred(0) if i == h else plain(0)
        symbols.append(Symbol.of(entries))
    return Word(tuple(symbols), _names(n))


def _last_values(word: Word) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for symbol in word.symbols:
        for var, change in symbol.changes().items():
            values[var] = change.started
    return values


def lambda_symbol(word: Word, ext: LambdaExt) -> Symbol:
    current = _last_values(word)
    entries: Dict[str, Entry] = {var_name(0): Change(current[var_name(0)], barred(0))}
    for j in range(1, ext.n + 1):
        x = var_name(j)
        entries[x] = Change(current[x], primed(j) if j in ext.mu else barred(j))
    return Symbol.of(entries)


def closed_form(spec: WnSpec, ext: LambdaExt) -> bool:
    """Every mu_i meets mu."""
    return all(mu & ext.mu for mu in spec.mus)


def extend_and_check(spec: WnSpec, ext: LambdaExt, instance: Optional[PnInstance] = None) -> bool:
    """
    Whether the prefix followed by the extension encodes a solution of P_n.

    The verdict comes from the oracle and must agree with closed_form.

    Raises:
        StatementMismatchError: If oracle and closed form disagree
    """
    if spec.n != ext.n:
        raise ValueError(f"prefix is for n={spec.n}, extension for n={ext.n}")
    instance = instance or build_pn(spec.n)
    prefix = wn_word(spec)
    word = prefix.extended([lambda_symbol(prefix, ext)])
    plan = decode(word)
    oracle = plan is not None and verify_solution(instance.problem, plan).is_solution
    expected = closed_form(spec, ext)
    if oracle != expected:
        raise StatementMismatchError(
            f"n={spec.n} mus={[sorted(m) for m in spec.mus]} mu={sorted(ext.mu)}: "
            f"oracle says {oracle}, closed form says {expected}"
        )
    return oracle


def check_statement_bridge(n: int, samples: int, rng: random.Random, max_mus: int = 4) -> int:
    """
    Compare oracle and closed form on random (prefix, extension) pairs.

    Returns:
        Number of pairs checked (raises on the first disagreement)
    """
    instance = build_pn(n)
    universe = list(range(1, n + 1))
    for _ in range(samples):
        mus = [
            {j for j in universe if rng.random() < 0.5}
            for _ in range(rng.randint(0, max_mus))
        ]
        mu = {j for j in universe if rng.random() < 0.5}
        extend_and_check(WnSpec.of(n, mus), LambdaExt.of(n, mu), instance)
    return samples


# ============================================================================
# Counting distinguished prefixes
# ============================================================================


@dataclass(frozen=True)
class DistinguishedPair:
    left: WnSpec
    right: WnSpec
    ext: LambdaExt


@dataclass
class LowerBoundResult:
    n: int
    classes: int
    verified_pairs: int
    runtime_s: float
    witnesses: List[DistinguishedPair] = field(default_factory=list, repr=False)

    @property
    def two_pow_n(self) -> int:
        return 2**self.n

    @property
    def strict(self) -> bool:
        return self.classes > self.two_pow_n

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "classes": self.classes,
            "two_pow_n": self.two_pow_n,
            "verified_pairs": self.verified_pairs,
            "strict": self.strict,
            "runtime_s": round(self.runtime_s, 3),
        }


def half_subsets(n: int) -> List[Subset]:
    """Every floor(n/2)-subset of {1..n} in lexicographic order."""
    return [frozenset(c) for c in itertools.combinations(range(1, n + 1), n // 2)]


def canonical_specs(n: int) -> List[WnSpec]:
    """One prefix per support: each subset once, subsets in lexicographic order."""
    subsets = half_subsets(n)
    specs = []
    for size in range(len(subsets) + 1):
        for chosen in itertools.combinations(subsets, size):
            specs.append(WnSpec(n, tuple(chosen)))
    return specs


def distinguisher(left: WnSpec, right: WnSpec) -> Tuple[WnSpec, WnSpec, LambdaExt]:
    """
    Extension rejected after `left` and accepted after `right` (roles swapped
    when needed): pick mu in left missing from right, then one element of
    every right subset outside mu.
    """
    only_left = [mu for mu in left.mus if mu not in right.support]
    if not only_left:
        left, right = right, left
        only_left = [mu for mu in left.mus if mu not in right.support]
    if not only_left:
        raise ValueError("prefixes with equal support are not distinguished")
    mu = only_left[0]
    picks = {min(other - mu) for other in right.mus}
    return left, right, LambdaExt(left.n, frozenset(picks))


def count_distinguished(n: int, keep_witnesses: bool = False) -> LowerBoundResult:
    """
    Count the canonical prefixes and certify every pair with an extension.

    Returns:
        LowerBoundResult with classes = 2 ** C(n, floor(n/2))

    Raises:
        ValueError: If n is outside 1..LOWERBOUND_MAX_N
        StatementMismatchError: If the oracle contradicts the closed form
    """
    if not 1 <= n <= LOWERBOUND_MAX_N:
        raise ValueError(f"n must be between 1 and {LOWERBOUND_MAX_N}, got {n}")
    started = time.perf_counter()
    instance = build_pn(n)
    specs = canonical_specs(n)
    assert len(specs) == 2 ** comb(n, n // 2)
    witnesses: List[DistinguishedPair] = []
    verified = 0
    for i, first in enumerate(specs):
        logger.debug("support %d/%d: %s", i + 1, len(specs), [sorted(m) for m in first.mus])
        for second in specs[i + 1:]:
            rejected, accepted, ext = distinguisher(first, second)
            if extend_and_check(rejected, ext, instance) or not extend_and_check(accepted, ext, instance):
                raise StatementMismatchError(f"extension {sorted(ext.mu)} does not distinguish the pair")
            verified += 1
            if keep_witnesses:
                witnesses.append(DistinguishedPair(rejected, accepted, ext))
    result = LowerBoundResult(n, len(specs), verified, time.perf_counter() - started, witnesses)
    logger.info("n=%d: %d classes, %d pairs verified", n, result.classes, verified)
    return result


LOWERBOUND_CSV_HEADER = ["n", "classes", "two_pow_n", "verified_pairs", "strict", "runtime_s"]


def format_lowerbound_csv(results: Sequence[LowerBoundResult]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(LOWERBOUND_CSV_HEADER)
    for r in results:
        row = r.to_dict()
        writer.writerow([row[c] for c in LOWERBOUND_CSV_HEADER])
    return buffer.getvalue()
