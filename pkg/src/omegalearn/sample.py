"""Finite samples of classified ultimately periodic words."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Alphabet, OmegaWord, normalize
from .errors import DisjointnessViolation


@dataclass(frozen=True)
class Sample:
    """Disjoint sets of positive and negative omega-words.

    Words are stored in reduced form, so disjointness of the two sets under
    omega-word equality coincides with plain set disjointness.  The
    alphabet is carried explicitly; when omitted it is inferred from the
    words' symbols (in sorted order).
    """

    positives: frozenset[OmegaWord]
    negatives: frozenset[OmegaWord]
    alphabet: Alphabet

    @classmethod
    def make(
        cls,
        positives: Iterable[OmegaWord | str],
        negatives: Iterable[OmegaWord | str],
        alphabet: Alphabet | None = None,
    ) -> "Sample":
        pos = frozenset(cls._coerce(w) for w in positives)
        neg = frozenset(cls._coerce(w) for w in negatives)
        clash = pos & neg
        if clash:
            w = min(clash, key=str)
            raise DisjointnessViolation(f"word {w} occurs as both positive and negative")
        if alphabet is None:
            symbols: set[str] = set()
            for w in pos | neg:
                symbols |= w.symbols()
            alphabet = Alphabet(tuple(sorted(symbols))) if symbols else Alphabet(("a",))
        return cls(pos, neg, alphabet)

    @staticmethod
    def _coerce(w: OmegaWord | str) -> OmegaWord:
        if isinstance(w, str):
            return OmegaWord.parse(w)
        return normalize(w)

    def words(self) -> frozenset[OmegaWord]:
        return self.positives | self.negatives

    def sorted_positives(self) -> tuple[OmegaWord, ...]:
        return tuple(sorted(self.positives, key=self._word_key))

    def sorted_negatives(self) -> tuple[OmegaWord, ...]:
        return tuple(sorted(self.negatives, key=self._word_key))

    def _word_key(self, w: OmegaWord):
        return (self.alphabet.word_key(w.spoke + w.period), self.alphabet.word_key(w.period))

    def __len__(self) -> int:
        return len(self.positives) + len(self.negatives)
