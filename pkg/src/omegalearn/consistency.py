"""Polynomial-time consistency solvers for partial conditions.

Each solver answers: does an acceptance condition of the given type exist
that accepts every positive set and rejects every negative set of a
partial condition?  On success the witnessing condition is returned, on
failure ``None``.  All solvers take the universe of defined transitions
explicitly (the systems are partial, so complements are taken relative to
the defined transitions) and never mutate their inputs.

The universe argument is an ordered sequence; its order fixes iteration
and output order, making every solver deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .conditions import (
    AcceptanceType,
    BuchiCondition,
    GenBuchiCondition,
    ParityCondition,
    PartialCondition,
    RabinCondition,
    RabinPair,
    ConflictReport,
    induced_partial_condition,
)
from .core import Transition, TransitionSystem
from .errors import InconsistentPartialCondition
from .sample import Sample


def _check_consistent(h: PartialCondition) -> None:
    if not h.is_consistent():
        clash = sorted(h.positive & h.negative, key=sorted)[0]
        raise InconsistentPartialCondition(f"set classified both ways: {sorted(clash)}")


def _set_order_key(universe: Sequence[Transition]):
    pos = {t: i for i, t in enumerate(universe)}

    def key(X: frozenset[Transition]):
        return (len(X), sorted(pos[t] for t in X))

    return key


def _maximal_sets(sets, key) -> list[frozenset[Transition]]:
    """subset-maximal members, in deterministic (size, canonical) order."""
    out = []
    for X in sorted(sets, key=key):
        if not any(X < Y for Y in sets):
            out.append(X)
    return out


def buchi_cons(h: PartialCondition, universe: Sequence[Transition]) -> BuchiCondition | None:
    """Büchi condition consistent with ``h``, or None.

    None exactly when some positive set is covered by the union of the
    negative sets; otherwise the complement of that union works.
    """
    _check_consistent(h)
    covered: frozenset[Transition] = frozenset().union(*h.negative) if h.negative else frozenset()
    if any(p <= covered for p in h.positive):
        return None
    return BuchiCondition(frozenset(universe) - covered)


def gen_buchi_cons(
    h: PartialCondition, universe: Sequence[Transition]
) -> GenBuchiCondition | None:
    """Generalized Büchi condition consistent with ``h``, or None.

    One component per subset-maximal negative set (its complement); None
    exactly when a positive set is contained in a maximal negative set.
    With no negative sets the single component is the whole universe.
    """
    _check_consistent(h)
    key = _set_order_key(universe)
    maximal = _maximal_sets(h.negative, key)
    if any(p <= n for p in h.positive for n in maximal):
        return None
    full = frozenset(universe)
    if not maximal:
        return GenBuchiCondition((full,))
    return GenBuchiCondition(tuple(full - n for n in maximal))


# -- parity -----------------------------------------------------------------


@dataclass(frozen=True)
class ZielonkaPath:
    """Strictly shrinking chain of transition sets with alternating
    classifications; the canonical form of a parity condition."""

    entries: tuple[tuple[frozenset[Transition], int], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a Zielonka path has at least one entry")
        for (za, sa), (zb, sb) in zip(self.entries, self.entries[1:]):
            if not (zb < za):
                raise ValueError("chain must be strictly decreasing")
            if sb != 1 - sa:
                raise ValueError("classifications must alternate")

    def __len__(self) -> int:
        return len(self.entries)

    def priorities(self) -> dict[Transition, int]:
        """priority(t) = sigma_0 + max{i : t in Z_i}."""
        sigma0 = self.entries[0][1]
        out: dict[Transition, int] = {}
        for i, (z, _) in enumerate(self.entries):
            for t in z:
                out[t] = sigma0 + i
        return out


def _zielonka(h: PartialCondition, universe: frozenset[Transition]) -> ZielonkaPath | None:
    """Core chain construction; requires the universe to be classified."""
    sigma = h.classification(universe)
    assert sigma is not None
    entries = [(universe, sigma)]
    z = universe
    while z:
        opposite = h.negative if sigma == 0 else h.positive
        nxt: frozenset[Transition] = frozenset()
        for X in opposite:
            if X <= z:
                nxt |= X
        if nxt == z:
            return None  # positive and negative unions coincide
        if nxt:
            entries.append((nxt, 1 - sigma))
        z = nxt
        sigma = 1 - sigma
    return ZielonkaPath(tuple(entries))


def parity_cons(
    h: PartialCondition, universe: Sequence[Transition]
) -> tuple[ZielonkaPath, ParityCondition] | None:
    """Parity condition with the minimal number of priorities, or None.

    If the universe itself is classified, the chain construction runs
    directly.  Otherwise it runs once with the universe added as positive
    and once as negative; the shorter resulting path wins (the lengths
    differ by at most one), ties preferring the positive variant.
    """
    _check_consistent(h)
    full = frozenset(universe)
    if h.classification(full) is not None:
        candidates = [_zielonka(h, full)]
    else:
        h_pos = PartialCondition(h.positive | {full}, h.negative)
        h_neg = PartialCondition(h.positive, h.negative | {full})
        candidates = [_zielonka(h_pos, full), _zielonka(h_neg, full)]
    best: ZielonkaPath | None = None
    for path in candidates:
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        return None
    return best, ParityCondition(best.priorities())


def rabin_cons(h: PartialCondition, universe: Sequence[Transition]) -> RabinCondition | None:
    """Rabin condition consistent with ``h``, or None.

    One pair per positive set P: avoid everything outside P, require P
    minus its maximal negative subsets.  None exactly when some positive
    set equals the union of its maximal negative subsets.  With no
    positive sets the empty pair list rejects everything.
    """
    _check_consistent(h)
    key = _set_order_key(universe)
    full = frozenset(universe)
    pairs = []
    for p in sorted(h.positive, key=key):
        negatives_inside = [n for n in h.negative if n <= p]
        maximal = _maximal_sets(negatives_inside, key)
        required = p - frozenset().union(*maximal) if maximal else p
        if not required:
            return None
        pairs.append(RabinPair(fin=full - p, inf=required))
    return RabinCondition(tuple(pairs))


# -- duals and the learner-facing check -------------------------------------


def streett_or_cobuchi_cons(
    h: PartialCondition, flavor: str, universe: Sequence[Transition]
):
    """Solve for the dual types by flipping the partial condition.

    ``flavor`` is ``"cobuchi"`` or ``"streett"``; the returned Büchi or
    Rabin condition is to be interpreted under complemented semantics by
    the caller.
    """
    if flavor == "cobuchi":
        return buchi_cons(h.swapped(), universe)
    if flavor == "streett":
        return rabin_cons(h.swapped(), universe)
    raise ValueError(f"unknown flavor {flavor!r}")


_SOLVERS = {
    AcceptanceType.BUCHI: buchi_cons,
    AcceptanceType.GEN_BUCHI: gen_buchi_cons,
    AcceptanceType.PARITY: parity_cons,
    AcceptanceType.RABIN: rabin_cons,
}


def solve(h: PartialCondition, acc_type: AcceptanceType, universe: Sequence[Transition]):
    """Run the matching solver; parity results are unwrapped to the condition."""
    result = _SOLVERS[acc_type](h, universe)
    if acc_type is AcceptanceType.PARITY and result is not None:
        return result[1]
    return result


def ts_consistent(ts: TransitionSystem, s: Sample, acc_type: AcceptanceType) -> bool:
    """Whether the transition system admits a condition of the given type
    consistent with the sample.

    True iff the induced partial condition has no conflict (no shared
    infinity set, no indistinguishable positive/negative pair) and the
    matching solver finds a condition.
    """
    h = induced_partial_condition(ts, s)
    if isinstance(h, ConflictReport):
        return False
    return solve(h, acc_type, ts.defined_transitions()) is not None
