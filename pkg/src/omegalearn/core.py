"""Ultimately periodic words and deterministic partial transition systems.

Words are represented as a finite spoke ``u`` followed by an infinitely
repeated period ``v`` (written ``u(v)`` in text form).  Transition systems
are deterministic and partial: a missing transition makes a run escape.
All values in this module are immutable and every operation is pure.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    NotStronglyConnected,
    ParseError,
    SymbolNotInAlphabet,
    Unreachable,
)

#: A transition is a (state, symbol) pair; its target lives in the owning
#: transition system.
Transition = tuple[str, str]


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of single-character symbols.

    The declaration order is the canonical order used for
    length-lexicographic comparisons throughout the library.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        for s in self.symbols:
            if not (isinstance(s, str) and len(s) == 1):
                raise ValueError(f"alphabet symbols must be single characters, got {s!r}")

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(symbols))

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise SymbolNotInAlphabet(f"symbol {symbol!r} not in alphabet {self.symbols}")

    def word_key(self, word: str):
        """Sort key realising the length-lexicographic order on finite words."""
        return (len(word), tuple(self.index(c) for c in word))


_WORD_RE = re.compile(r"^([^()]*)\(([^()]+)\)$")


@dataclass(frozen=True)
class OmegaWord:
    """An ultimately periodic word ``spoke . period^omega``."""

    spoke: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be non-empty")

    def __str__(self) -> str:
        return f"{self.spoke}({self.period})"

    @classmethod
    def parse(cls, text: str) -> "OmegaWord":
        """Parse the ``u(v)`` text form; the result is normalized."""
        m = _WORD_RE.match(text.strip())
        if m is None:
            raise ParseError(f"malformed omega-word {text!r}, expected u(v) with non-empty v")
        return normalize(cls(m.group(1), m.group(2)))

    def prefix(self, n: int) -> str:
        """The first ``n`` symbols of the infinite word."""
        if n <= len(self.spoke):
            return self.spoke[:n]
        rest = n - len(self.spoke)
        reps = rest // len(self.period) + 1
        return self.spoke + (self.period * reps)[:rest]

    def at(self, i: int) -> str:
        if i < len(self.spoke):
            return self.spoke[i]
        return self.period[(i - len(self.spoke)) % len(self.period)]

    def symbols(self) -> set[str]:
        return set(self.spoke) | set(self.period)

    def suffix(self, n: int) -> "OmegaWord":
        """The word with its first ``n`` symbols dropped (not normalized)."""
        if n <= len(self.spoke):
            return OmegaWord(self.spoke[n:], self.period)
        k = (n - len(self.spoke)) % len(self.period)
        return OmegaWord("", self.period[k:] + self.period[:k])

    def is_normalized(self) -> bool:
        return normalize(self) == self


def _primitive_root(v: str) -> str:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def normalize(w: OmegaWord) -> OmegaWord:
    """The unique reduced form: primitive period, minimal spoke.

    The period is replaced by its primitive root; then the spoke's last
    symbol is repeatedly rolled into a rotation of the period while it
    matches the period's last symbol.  The result denotes the same word.
    """
    period = _primitive_root(w.period)
    spoke = w.spoke
    while spoke and spoke[-1] == period[-1]:
        spoke = spoke[:-1]
        period = period[-1] + period[:-1]
    return OmegaWord(spoke, period)


def omega_equal(w1: OmegaWord, w2: OmegaWord) -> bool:
    """Whether two ultimately periodic words denote the same infinite word.

    Decided by comparing the first ``max(|u|, |x|) + |v|*|y|`` symbols of
    the reduced forms; two distinct reduced words must differ within that
    bound.
    """
    a, b = normalize(w1), normalize(w2)
    bound = max(len(a.spoke), len(b.spoke)) + len(a.period) * len(b.period)
    return a.prefix(bound) == b.prefix(bound)


@dataclass(frozen=True)
class TransitionSystem:
    """Deterministic partial transition system over a finite alphabet.

    ``states`` is ordered; its order is the canonical state order (for the
    learner this is the length-lexicographic order of the states' access
    words).  ``transitions`` maps (state, symbol) to the successor state
    and may be partial.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    initial: str
    transitions: Mapping[Transition, str]

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state names")
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} not among states")
        for (p, a), q in self.transitions.items():
            if p not in self.states or q not in self.states:
                raise ValueError(f"transition ({p!r},{a!r})->{q!r} uses unknown state")
            if a not in self.alphabet:
                raise ValueError(f"transition symbol {a!r} not in alphabet")

    # -- basic queries -------------------------------------------------

    def target(self, state: str, symbol: str) -> str | None:
        return self.transitions.get((state, symbol))

    def state_index(self, state: str) -> int:
        return self.states.index(state)

    def transition_key(self, t: Transition):
        """Canonical order on transitions: state order, then symbol order."""
        return (self.states.index(t[0]), self.alphabet.index(t[1]))

    def defined_transitions(self) -> tuple[Transition, ...]:
        return tuple(sorted(self.transitions.keys(), key=self.transition_key))

    def sorted_transitions(self, ts_set: Iterable[Transition]) -> tuple[Transition, ...]:
        return tuple(sorted(ts_set, key=self.transition_key))

    def successor(self, state: str, word: str) -> str | None:
        """delta* — follow ``word`` from ``state``; None when the run dies."""
        cur = state
        for a in word:
            nxt = self.transitions.get((cur, a))
            if nxt is None:
                return None
            cur = nxt
        return cur

    # -- functional updates (used by the learner) ----------------------

    def with_transition(self, state: str, symbol: str, target: str) -> "TransitionSystem":
        new = dict(self.transitions)
        new[(state, symbol)] = target
        return TransitionSystem(self.states, self.alphabet, self.initial, new)

    def with_state(self, name: str) -> "TransitionSystem":
        return TransitionSystem(self.states + (name,), self.alphabet, self.initial, dict(self.transitions))

    def fresh_state_name(self, base: str) -> str:
        name = base
        while name in self.states:
            name += "'"
        return name

    # -- reachability --------------------------------------------------

    def reachable_states(self, start: str | None = None) -> tuple[str, ...]:
        start = self.initial if start is None else start
        seen = {start}
        queue = deque([start])
        while queue:
            q = queue.popleft()
            for a in self.alphabet:
                nxt = self.transitions.get((q, a))
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return tuple(s for s in self.states if s in seen)

    def minimal_access_words(self) -> dict[str, str]:
        """BFS in symbol order: each reachable state's length-lex minimal
        access word from the initial state."""
        words = {self.initial: ""}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for a in self.alphabet:
                nxt = self.transitions.get((q, a))
                if nxt is not None and nxt not in words:
                    words[nxt] = words[q] + a
                    queue.append(nxt)
        return words


# -- runs ---------------------------------------------------------------


@dataclass(frozen=True)
class InfiniteRun:
    """Run that never escapes: transient prefix plus the infinity set."""

    transient: tuple[Transition, ...]
    infinity_set: frozenset[Transition]


@dataclass(frozen=True)
class EscapingRun:
    """Run that hits an undefined transition.

    ``escape_prefix`` is ``u·a`` where the undefined step is ``(state, a)``;
    ``exit_string`` is the remaining suffix ``a·v`` as an omega-word.
    """

    state: str
    escape_prefix: str
    exit_string: OmegaWord


RunResult = InfiniteRun | EscapingRun


def run(ts: TransitionSystem, w: OmegaWord) -> RunResult:
    """Simulate ``ts`` on ``w`` and classify the unique run.

    The lasso of an infinite run is detected by a repeated
    (state, period-offset) pair; the infinity set is exactly the set of
    transitions traversed infinitely often.
    """
    w = normalize(w)
    for sym in w.symbols():
        if sym not in ts.alphabet:
            raise SymbolNotInAlphabet(f"symbol {sym!r} of {w} not in alphabet")
    state = ts.initial
    trail: list[Transition] = []
    for i, a in enumerate(w.spoke):
        nxt = ts.target(state, a)
        if nxt is None:
            return EscapingRun(state, w.spoke[: i + 1], normalize(w.suffix(i)))
        trail.append((state, a))
        state = nxt
    period = w.period
    seen: dict[tuple[str, int], int] = {}
    step = 0
    while True:
        offset = step % len(period)
        key = (state, offset)
        if key in seen:
            start = seen[key]
            infinity = frozenset(trail[len(w.spoke) + start :])
            return InfiniteRun(tuple(trail[: len(w.spoke) + start]), infinity)
        seen[key] = step
        a = period[offset]
        nxt = ts.target(state, a)
        if nxt is None:
            consumed = len(w.spoke) + step
            return EscapingRun(state, w.prefix(consumed + 1), normalize(w.suffix(consumed)))
        trail.append((state, a))
        state = nxt
        step += 1


def escapes(
    positives: Iterable[OmegaWord], ts: TransitionSystem
) -> tuple[tuple[OmegaWord, str], ...]:
    """All words of ``positives`` whose run escapes, with their escape
    prefixes, ordered length-lexicographically by escape prefix."""
    out = []
    for w in positives:
        r = run(ts, w)
        if isinstance(r, EscapingRun):
            out.append((w, r.escape_prefix))
    out.sort(key=lambda pair: (ts.alphabet.word_key(pair[1]), str(pair[0])))
    return tuple(out)


def indistinguishable(ts: TransitionSystem, w1: OmegaWord, w2: OmegaWord) -> bool:
    """Whether both words escape from the same state with equal exit strings."""
    r1 = run(ts, w1)
    r2 = run(ts, w2)
    return (
        isinstance(r1, EscapingRun)
        and isinstance(r2, EscapingRun)
        and r1.state == r2.state
        and omega_equal(r1.exit_string, r2.exit_string)
    )


# -- strongly connected machinery ----------------------------------------


def _scc_states(edges: Iterable[tuple[str, str]]) -> list[set[str]]:
    """Tarjan over the digraph given by edge endpoint pairs."""
    adj: dict[str, list[str]] = {}
    nodes: list[str] = []
    for p, q in edges:
        for n in (p, q):
            if n not in adj:
                adj[n] = []
                nodes.append(n)
        adj[p].append(q)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[set[str]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        # iterative Tarjan
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = set()
                while True:
                    m = stack.pop()
                    on_stack.discard(m)
                    comp.add(m)
                    if m == node:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return sccs


def scc_transition_sets(
    ts: TransitionSystem, restrict: Iterable[Transition]
) -> tuple[frozenset[Transition], ...]:
    """SCC decomposition of the sub-system containing only ``restrict``.

    Returns, per non-trivial SCC, the set of restricted transitions with
    both endpoints inside it; SCCs without an internal transition are
    omitted.  The output is sorted by minimal contained transition.
    """
    restrict = list(restrict)
    for t in restrict:
        if t not in ts.transitions:
            raise ValueError(f"transition {t} not defined in the transition system")
    edges = [(p, ts.transitions[(p, a)]) for (p, a) in restrict]
    sets = []
    for comp in _scc_states(edges):
        internal = frozenset(
            (p, a) for (p, a) in restrict if p in comp and ts.transitions[(p, a)] in comp
        )
        if internal:
            sets.append(internal)
    sets.sort(key=lambda s: min(ts.transition_key(t) for t in s))
    return tuple(sets)


def is_strongly_connected_set(ts: TransitionSystem, component: Iterable[Transition]) -> bool:
    """Whether the transition set forms a single SCC covering all its
    endpoint states (that is, it can occur as an infinity set)."""
    component = frozenset(component)
    if not component:
        return False
    endpoints = {p for p, _ in component} | {ts.transitions[t] for t in component}
    sccs = _scc_states([(p, ts.transitions[(p, a)]) for (p, a) in component])
    return len(sccs) == 1 and sccs[0] == endpoints


def _shortest_path_word(
    ts: TransitionSystem, component: frozenset[Transition], src: str, dst: str
) -> str:
    """Length-lex shortest word from src to dst using only component
    transitions.  Both states must lie inside the component."""
    if src == dst:
        return ""
    prev: dict[str, tuple[str, str]] = {}
    queue = deque([src])
    seen = {src}
    while queue:
        q = queue.popleft()
        for a in ts.alphabet:
            if (q, a) not in component:
                continue
            nxt = ts.transitions[(q, a)]
            if nxt in seen:
                continue
            seen.add(nxt)
            prev[nxt] = (q, a)
            if nxt == dst:
                word = []
                cur = dst
                while cur != src:
                    p, sym = prev[cur]
                    word.append(sym)
                    cur = p
                return "".join(reversed(word))
            queue.append(nxt)
    raise NotStronglyConnected(f"no path from {src!r} to {dst!r} within component")


def word_visiting_all(
    ts: TransitionSystem,
    component: Iterable[Transition],
    access: str | None = None,
) -> OmegaWord:
    """An ultimately periodic word whose infinity set is exactly ``component``.

    The spoke is ``access`` (extended minimally into the component when it
    stops short of it); the period is a closed tour visiting every
    component transition at least once, built by greedily concatenating
    shortest connecting paths in canonical transition order.
    """
    component = frozenset(component)
    if not is_strongly_connected_set(ts, component):
        raise NotStronglyConnected(f"{component} is not a strongly connected transition set")
    comp_states = {p for p, _ in component}
    if access is None:
        words = ts.minimal_access_words()
        candidates = sorted(
            (w for s, w in words.items() if s in comp_states),
            key=ts.alphabet.word_key,
        )
        if not candidates:
            raise Unreachable("component not reachable from the initial state")
        access = candidates[0]
    start = ts.successor(ts.initial, access)
    if start is None:
        raise Unreachable(f"access word {access!r} has no run")
    if start not in comp_states:
        # extend minimally: BFS over the full system into the component
        prev: dict[str, tuple[str, str]] = {}
        queue = deque([start])
        seen = {start}
        goal = None
        while queue and goal is None:
            q = queue.popleft()
            for a in ts.alphabet:
                nxt = ts.target(q, a)
                if nxt is None or nxt in seen:
                    continue
                seen.add(nxt)
                prev[nxt] = (q, a)
                if nxt in comp_states:
                    goal = nxt
                    break
                queue.append(nxt)
        if goal is None:
            raise Unreachable(f"access word {access!r} cannot be extended into the component")
        extra = []
        cur = goal
        while cur != start:
            p, sym = prev[cur]
            extra.append(sym)
            cur = p
        access = access + "".join(reversed(extra))
        start = goal
    tour: list[str] = []
    cur = start
    for (p, a) in sorted(component, key=ts.transition_key):
        tour.append(_shortest_path_word(ts, component, cur, p))
        tour.append(a)
        cur = ts.transitions[(p, a)]
    tour.append(_shortest_path_word(ts, component, cur, start))
    return normalize(OmegaWord(access, "".join(tour)))
