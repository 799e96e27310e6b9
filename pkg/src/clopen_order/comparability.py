"""The relation ``A >= B`` between clopen sets, and searches for failures of it.

``A >= B`` holds when ``mu(A) > mu(B)`` for every invariant probability
measure, or ``mu(A) == mu(B)`` for every one.  Invariant measures are convex
combinations of the ergodic ones, so it is enough to look at the ergodic
list: a mix of signs over ergodic measures is realized by some combination
that breaks both clauses, while all-strict or all-equal survives convexity.
A strict/equal mix is therefore *incomparable*.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .clopen import ClopenSet, MeasureVector, Trace
from .systems import SystemSpace

__all__ = [
    "Kind",
    "Verdict",
    "IncomparablePair",
    "ComparabilityReport",
    "compare",
    "compare_vectors",
    "find_incomparable",
    "verify_total_comparability",
    "candidate_sets",
]


class Kind(str, enum.Enum):
    EQ = "EQ"
    GEQ_STRICT = "GEQ_STRICT"
    LEQ_STRICT = "LEQ_STRICT"
    INCOMPARABLE = "INCOMPARABLE"


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    signs: tuple[int, ...]
    witnesses: tuple[int, int] | None
    left: MeasureVector
    right: MeasureVector

    @property
    def geq(self) -> bool:
        """Whether ``A >= B`` holds."""
        return self.kind in (Kind.EQ, Kind.GEQ_STRICT)

    @property
    def leq(self) -> bool:
        return self.kind in (Kind.EQ, Kind.LEQ_STRICT)

    @property
    def comparable(self) -> bool:
        return self.kind is not Kind.INCOMPARABLE

    @property
    def opposite_strict(self) -> bool:
        return 1 in self.signs and -1 in self.signs

    def record(self, digits: int = 12) -> dict:
        return {
            "kind": self.kind.value,
            "signs": list(self.signs),
            "witnesses": list(self.witnesses) if self.witnesses else None,
            "left": {"exact": self.left.exact(), "decimal": self.left.decimals(digits)},
            "right": {"exact": self.right.exact(), "decimal": self.right.decimals(digits)},
        }


def _kind(signs) -> Kind:
    s = set(signs)
    if s == {0}:
        return Kind.EQ
    if s == {1}:
        return Kind.GEQ_STRICT
    if s == {-1}:
        return Kind.LEQ_STRICT
    return Kind.INCOMPARABLE


def _witnesses(signs) -> tuple[int, int]:
    if 1 in signs and -1 in signs:
        return signs.index(1), signs.index(-1)
    i = next(k for k, s in enumerate(signs) if s != 0)
    j = next(k for k, s in enumerate(signs) if s == 0)
    return i, j


def compare_vectors(left: MeasureVector, right: MeasureVector) -> Verdict:
    signs = (left - right).signs()
    kind = _kind(signs)
    wit = _witnesses(signs) if kind is Kind.INCOMPARABLE else None
    return Verdict(kind, signs, wit, left, right)


def compare(a: ClopenSet, b: ClopenSet) -> Verdict:
    if a.space is not b.space:
        raise ValueError("clopen sets belong to different spaces")
    return compare_vectors(a.measure_vector(), b.measure_vector())


@dataclass(frozen=True)
class IncomparablePair:
    a: ClopenSet
    b: ClopenSet
    verdict: Verdict


def candidate_sets(space: SystemSpace, max_len: int, max_union: int = 2) -> Iterator[ClopenSet]:
    """Cylinders and small cylinder unions, one component at a time.

    Order: components as declared, window length ascending, then word sets by
    size and lexicographically.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    for i, comp in enumerate(space.components):
        for n in range(1, max_len + 1):
            lang = comp.language(n)
            for size in range(1, min(max_union, len(lang)) + 1):
                for words in itertools.combinations(lang, size):
                    yield ClopenSet.from_words(space, i, words)


def find_incomparable(space: SystemSpace, max_len: int, max_union: int = 2) -> IncomparablePair | None:
    """First incomparable pair among :func:`candidate_sets`, or ``None``.

    Pairs whose sign vectors hold both +1 and -1 are searched first; only if
    none exists does a strict/equal mix get returned.
    """
    cands = list(candidate_sets(space, max_len, max_union))
    vectors = [c.measure_vector() for c in cands]
    fallback = None
    for i, j in itertools.combinations(range(len(cands)), 2):
        v = compare_vectors(vectors[i], vectors[j])
        if v.kind is not Kind.INCOMPARABLE:
            continue
        if v.opposite_strict:
            return IncomparablePair(cands[i], cands[j], v)
        if fallback is None:
            fallback = IncomparablePair(cands[i], cands[j], v)
    return fallback


@dataclass
class ComparabilityReport:
    window: int
    sets: int
    pairs: int
    incomparable: int
    capped: bool
    first_witness: IncomparablePair | None = None

    def record(self) -> dict:
        out = {
            "window": self.window,
            "sets": self.sets,
            "pairs": self.pairs,
            "incomparable": self.incomparable,
            "capped": self.capped,
        }
        if self.first_witness is not None:
            w = self.first_witness
            out["witness"] = {
                "a": w.a.to_notation(),
                "b": w.b.to_notation(),
                "verdict": w.verdict.record(),
            }
        return out


def verify_total_comparability(
    space: SystemSpace, max_len: int, budget: int = 256, seed: int = 0
) -> ComparabilityReport:
    """Compare every pair of sets built from words over the length-``max_len`` window.

    The sets are all subsets of the admissible words of every component (the
    window starts at offset 0).  When there are more than ``budget`` such
    sets, a deterministic sample of ``budget`` of them is used instead.
    """
    atoms = [(i, w) for i, comp in enumerate(space.components) for w in comp.language(max_len)]
    total = 2 ** len(atoms)
    capped = total > budget
    if capped:
        rng = random.Random(seed)
        masks = sorted({rng.getrandbits(len(atoms)) for _ in range(budget)})
    else:
        masks = range(total)

    def build(mask: int) -> ClopenSet:
        words = [set() for _ in space.components]
        for k, (i, w) in enumerate(atoms):
            if mask >> k & 1:
                words[i].add(w)
        return ClopenSet(space, [Trace(0, max_len, frozenset(ws)) for ws in words])

    sets = [build(m) for m in masks]
    vectors = [s.measure_vector() for s in sets]
    pairs = bad = 0
    first = None
    for i, j in itertools.combinations(range(len(sets)), 2):
        pairs += 1
        v = compare_vectors(vectors[i], vectors[j])
        if v.kind is Kind.INCOMPARABLE:
            bad += 1
            if first is None:
                first = IncomparablePair(sets[i], sets[j], v)
    return ComparabilityReport(max_len, len(sets), pairs, bad, capped, first)
