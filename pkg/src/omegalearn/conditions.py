"""Acceptance conditions over transitions and their satisfaction semantics.

All conditions are transition-based: a condition classifies the infinity
set of a run, never the states themselves.  Parity conditions are min-even:
the least priority seen infinitely often decides, even means accept.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .core import (
    EscapingRun,
    InfiniteRun,
    OmegaWord,
    Transition,
    TransitionSystem,
    omega_equal,
    run,
)
from .errors import EmptyInfinitySet, UnsupportedType
from .sample import Sample


class AcceptanceType(enum.Enum):
    BUCHI = "buchi"
    GEN_BUCHI = "genbuchi"
    PARITY = "parity"
    RABIN = "rabin"

    @classmethod
    def parse(cls, text: str) -> "AcceptanceType":
        table = {t.value: t for t in cls}
        key = text.strip().lower().replace("-", "").replace("_", "")
        if key not in table:
            raise UnsupportedType(f"unknown acceptance type {text!r}")
        return table[key]


@dataclass(frozen=True)
class BuchiCondition:
    """Accepts X iff X intersects the accepting set."""

    accepting: frozenset[Transition]


@dataclass(frozen=True)
class GenBuchiCondition:
    """Accepts X iff X intersects every component."""

    components: tuple[frozenset[Transition], ...]


@dataclass(frozen=True)
class ParityCondition:
    """Accepts X iff the minimal priority occurring in X is even.

    The priority map must be total on the defined transitions of the
    owning transition system.
    """

    priorities: Mapping[Transition, int]

    def used_priorities(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.priorities.values())))


@dataclass(frozen=True)
class RabinPair:
    """Accepts X iff X avoids ``fin`` and intersects ``inf``."""

    fin: frozenset[Transition]
    inf: frozenset[Transition]


@dataclass(frozen=True)
class RabinCondition:
    """Accepts X iff some pair accepts it; no pairs rejects everything."""

    pairs: tuple[RabinPair, ...]


@dataclass(frozen=True)
class MullerCondition:
    """Accepts X iff X is listed explicitly."""

    accepting: frozenset[frozenset[Transition]]


AcceptanceCondition = Union[
    BuchiCondition, GenBuchiCondition, ParityCondition, RabinCondition, MullerCondition
]


def condition_type(c: AcceptanceCondition) -> AcceptanceType:
    if isinstance(c, BuchiCondition):
        return AcceptanceType.BUCHI
    if isinstance(c, GenBuchiCondition):
        return AcceptanceType.GEN_BUCHI
    if isinstance(c, ParityCondition):
        return AcceptanceType.PARITY
    if isinstance(c, RabinCondition):
        return AcceptanceType.RABIN
    raise UnsupportedType(f"no acceptance type for {type(c).__name__}")


def satisfies(X: Iterable[Transition], c: AcceptanceCondition) -> bool:
    """Whether the non-empty transition set X satisfies the condition."""
    X = frozenset(X)
    if not X:
        raise EmptyInfinitySet("satisfaction is only defined for non-empty sets")
    if isinstance(c, BuchiCondition):
        return bool(X & c.accepting)
    if isinstance(c, GenBuchiCondition):
        return all(X & f for f in c.components)
    if isinstance(c, ParityCondition):
        return min(c.priorities[t] for t in X) % 2 == 0
    if isinstance(c, RabinCondition):
        return any(not (X & p.fin) and (X & p.inf) for p in c.pairs)
    if isinstance(c, MullerCondition):
        return X in c.accepting
    raise UnsupportedType(f"cannot evaluate {type(c).__name__}")


def condition_size(c: AcceptanceCondition) -> int:
    """Number of priorities / components / pairs; 1 for plain Büchi."""
    if isinstance(c, BuchiCondition):
        return 1
    if isinstance(c, GenBuchiCondition):
        return len(c.components)
    if isinstance(c, ParityCondition):
        return len(set(c.priorities.values()))
    if isinstance(c, RabinCondition):
        return len(c.pairs)
    if isinstance(c, MullerCondition):
        return len(c.accepting)
    raise UnsupportedType(f"no size for {type(c).__name__}")


def muller_expansion(c: AcceptanceCondition, universe: Iterable[Transition]) -> MullerCondition:
    """The explicit Muller condition agreeing with ``c`` on every non-empty
    subset of ``universe``."""
    universe = tuple(universe)
    accepted = []
    for mask in range(1, 1 << len(universe)):
        X = frozenset(universe[i] for i in range(len(universe)) if mask >> i & 1)
        if satisfies(X, c):
            accepted.append(X)
    return MullerCondition(frozenset(accepted))


@dataclass(frozen=True)
class Automaton:
    """A transition system augmented with an acceptance condition."""

    ts: TransitionSystem
    condition: AcceptanceCondition

    def __post_init__(self):
        defined = set(self.ts.transitions.keys())
        c = self.condition
        referenced: set[Transition] = set()
        if isinstance(c, BuchiCondition):
            referenced = set(c.accepting)
        elif isinstance(c, GenBuchiCondition):
            referenced = set().union(*c.components) if c.components else set()
        elif isinstance(c, ParityCondition):
            referenced = set(c.priorities.keys())
            if referenced != defined:
                raise ValueError("parity priorities must be total on defined transitions")
        elif isinstance(c, RabinCondition):
            for p in c.pairs:
                referenced |= p.fin | p.inf
        elif isinstance(c, MullerCondition):
            for s in c.accepting:
                referenced |= s
        if not referenced <= defined:
            raise ValueError("condition references undefined transitions")


def accepts(a: Automaton, w: OmegaWord) -> bool:
    """Whether the automaton accepts the word; escaping runs reject."""
    r = run(a.ts, w)
    if isinstance(r, EscapingRun):
        return False
    return satisfies(r.infinity_set, a.condition)


def accepts_from(a: Automaton, state: str, w: OmegaWord) -> bool:
    """Acceptance of ``w`` when the run starts in ``state`` instead."""
    rerooted = TransitionSystem(a.ts.states, a.ts.alphabet, state, a.ts.transitions)
    r = run(rerooted, w)
    if isinstance(r, EscapingRun):
        return False
    return satisfies(r.infinity_set, a.condition)


# -- partial conditions ----------------------------------------------------


@dataclass(frozen=True)
class PartialCondition:
    """Families of transition sets required accepting (positive) and
    rejecting (negative)."""

    positive: frozenset[frozenset[Transition]]
    negative: frozenset[frozenset[Transition]]

    @classmethod
    def make(cls, positive=(), negative=()) -> "PartialCondition":
        return cls(
            frozenset(frozenset(x) for x in positive),
            frozenset(frozenset(x) for x in negative),
        )

    def is_consistent(self) -> bool:
        return not (self.positive & self.negative)

    def classification(self, X: frozenset[Transition]) -> int | None:
        if X in self.positive:
            return 0
        if X in self.negative:
            return 1
        return None

    def swapped(self) -> "PartialCondition":
        return PartialCondition(self.negative, self.positive)


@dataclass(frozen=True)
class ConflictReport:
    """Why a transition system cannot be consistent with a sample.

    ``shared_infinity_set``: a positive and a negative word induce the same
    infinity set.  ``indistinguishable``: a positive and a negative word
    escape from the same state with equal exit strings.
    """

    kind: str
    positive: OmegaWord
    negative: OmegaWord
    detail: str = ""


def induced_partial_condition(
    ts: TransitionSystem, s: Sample
) -> PartialCondition | ConflictReport:
    """Infinity sets induced by the sample words, or a conflict witness.

    Positive (negative) non-escaping words contribute their infinity sets
    to the positive (negative) family.  A shared set or an
    indistinguishable escaping positive/negative pair is reported instead.
    """
    pos_inf: dict[frozenset[Transition], OmegaWord] = {}
    neg_inf: dict[frozenset[Transition], OmegaWord] = {}
    pos_escaping: list[tuple[OmegaWord, EscapingRun]] = []
    neg_escaping: list[tuple[OmegaWord, EscapingRun]] = []
    for w in s.sorted_positives():
        r = run(ts, w)
        if isinstance(r, InfiniteRun):
            pos_inf.setdefault(r.infinity_set, w)
        else:
            pos_escaping.append((w, r))
    for w in s.sorted_negatives():
        r = run(ts, w)
        if isinstance(r, InfiniteRun):
            neg_inf.setdefault(r.infinity_set, w)
        else:
            neg_escaping.append((w, r))
    shared = sorted(set(pos_inf) & set(neg_inf), key=lambda X: sorted(X))
    if shared:
        X = shared[0]
        return ConflictReport(
            "shared_infinity_set",
            pos_inf[X],
            neg_inf[X],
            detail="{" + ", ".join(f"({p},{a})" for p, a in sorted(X)) + "}",
        )
    for wp, rp in pos_escaping:
        for wn, rn in neg_escaping:
            if rp.state == rn.state and omega_equal(rp.exit_string, rn.exit_string):
                return ConflictReport(
                    "indistinguishable",
                    wp,
                    wn,
                    detail=f"both escape state {rp.state!r} with exit string {rp.exit_string}",
                )
    return PartialCondition(frozenset(pos_inf), frozenset(neg_inf))
