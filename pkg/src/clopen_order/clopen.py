"""Clopen subsets of a :class:`~clopen_order.systems.SystemSpace`.

Every clopen subset of a subshift is a finite union of cylinders over one
coordinate window, so a clopen set is stored per component as a *trace*:
a window ``[offset, offset + length)`` and the set of admissible words seen
there.  Length 0 with the empty word is the whole component; no words is the
empty trace.

Text notation (used by the CLI)::

    comp:offset:word|word|...     cylinder union in one component
    comp:offset:*                 the whole component
    ~term                         complement relative to X
    term+term+...                 union
    0:0:                          the empty set
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebraic import RealAlgebraic, to_decimal, to_exact
from .systems import SubshiftComponent, SystemSpace

__all__ = ["Trace", "ClopenSet", "MeasureVector", "NotationError"]


class NotationError(ValueError):
    """Malformed or inadmissible set notation."""


@dataclass(frozen=True)
class Trace:
    offset: int
    length: int
    words: frozenset

    @property
    def is_empty(self) -> bool:
        return not self.words

    @property
    def is_full_window(self) -> bool:
        return self.length == 0 and bool(self.words)

    @property
    def end(self) -> int:
        return self.offset + self.length

    def contains_window(self, offset: int, length: int) -> bool:
        if self.length == 0:
            return True
        return offset <= self.offset and self.end <= offset + length


EMPTY_TRACE = Trace(0, 0, frozenset())
FULL_TRACE = Trace(0, 0, frozenset({""}))


def _normalize(comp: SubshiftComponent, trace: Trace) -> Trace:
    words = trace.words & frozenset(comp.language(trace.length))
    if not words:
        return EMPTY_TRACE
    if trace.length == 0:
        return FULL_TRACE
    return Trace(trace.offset, trace.length, words)


def _refine(comp: SubshiftComponent, trace: Trace, offset: int, length: int) -> Trace:
    if not trace.contains_window(offset, length):
        raise ValueError(
            f"window ({offset}, {length}) does not contain ({trace.offset}, {trace.length})"
        )
    if trace.is_empty:
        return Trace(offset, length, frozenset())
    if trace.length == 0:
        return Trace(offset, length, frozenset(comp.language(length)))
    start = trace.offset - offset
    stop = start + trace.length
    words = frozenset(u for u in comp.language(length) if u[start:stop] in trace.words)
    return Trace(offset, length, words)


def _common_window(t1: Trace, t2: Trace) -> tuple[int, int]:
    if t1.length == 0:
        return t2.offset, t2.length
    if t2.length == 0:
        return t1.offset, t1.length
    lo = min(t1.offset, t2.offset)
    hi = max(t1.end, t2.end)
    return lo, hi - lo


class MeasureVector:
    """Exact per-ergodic-measure values ``(mu_i(A))_i``."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[RealAlgebraic]):
        self.entries = tuple(entries)

    @classmethod
    def of_rationals(cls, values) -> MeasureVector:
        return cls(RealAlgebraic.rational(v) for v in values)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _check(self, other):
        if len(other) != len(self):
            raise ValueError("measure vectors of different lengths")

    def __add__(self, other):
        self._check(other)
        return MeasureVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return MeasureVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return MeasureVector(-a for a in self)

    def scaled(self, k) -> MeasureVector:
        return MeasureVector(a.multiply_rational(k) for a in self)

    def signs(self) -> tuple[int, ...]:
        return tuple(a.sign() for a in self)

    def __eq__(self, other):
        if not isinstance(other, MeasureVector):
            return NotImplemented
        return len(self) == len(other) and all((a - b).sign() == 0 for a, b in zip(self, other))

    __hash__ = None

    def decimals(self, digits: int = 12) -> list[str]:
        return [to_decimal(a, digits) for a in self]

    def exact(self) -> list[str]:
        return [to_exact(a) for a in self]

    def __repr__(self):
        return f"MeasureVector({', '.join(self.decimals(6))})"


class ClopenSet:
    """An exact clopen subset of a system space."""

    __slots__ = ("space", "traces", "_measure")

    def __init__(self, space: SystemSpace, traces: Iterable[Trace]):
        traces = tuple(traces)
        if len(traces) != len(space.components):
            raise ValueError("one trace per component is required")
        self.space = space
        self.traces = tuple(_normalize(c, t) for c, t in zip(space.components, traces))
        self._measure = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, space: SystemSpace) -> ClopenSet:
        return cls(space, [EMPTY_TRACE] * len(space))

    @classmethod
    def full(cls, space: SystemSpace) -> ClopenSet:
        return cls(space, [FULL_TRACE] * len(space))

    @classmethod
    def full_component(cls, space: SystemSpace, component) -> ClopenSet:
        i = space.component_index(component)
        traces = [EMPTY_TRACE] * len(space)
        traces[i] = FULL_TRACE
        return cls(space, traces)

    @classmethod
    def from_words(cls, space: SystemSpace, component, words: Iterable[str], offset: int = 0) -> ClopenSet:
        i = space.component_index(component)
        words = frozenset(words)
        lengths = {len(w) for w in words}
        if len(lengths) > 1:
            raise ValueError("all words of a trace must have the same length")
        n = lengths.pop() if lengths else 0
        comp = space.components[i]
        bad = sorted(w for w in words if not comp.is_admissible(w))
        if bad:
            raise ValueError(f"inadmissible words {bad} in component {i}")
        traces = [EMPTY_TRACE] * len(space)
        traces[i] = Trace(offset, n, words)
        return cls(space, traces)

    @classmethod
    def cylinder(cls, space: SystemSpace, component, word: str, offset: int = 0) -> ClopenSet:
        """The cylinder ``{x : x[offset:offset+len(word)] == word}`` in one component."""
        return cls.from_words(space, component, [word], offset)

    # -- structure ------------------------------------------------------------

    def _same_space(self, other: ClopenSet) -> None:
        if not isinstance(other, ClopenSet) or other.space is not self.space:
            raise ValueError("clopen sets belong to different spaces")

    def is_empty(self) -> bool:
        return all(t.is_empty for t in self.traces)

    def refine_to_window(self, offset: int, length: int, component=None) -> ClopenSet:
        """Re-express over a larger window (one component, or all nonempty ones)."""
        comps = self.space.components
        if component is None:
            idx = range(len(comps))
        else:
            idx = [self.space.component_index(component)]
        traces = list(self.traces)
        for i in idx:
            traces[i] = _refine(comps[i], traces[i], offset, length)
        out = ClopenSet.__new__(ClopenSet)
        out.space = self.space
        out.traces = tuple(traces)
        out._measure = self._measure
        return out

    def _aligned(self, other: ClopenSet):
        self._same_space(other)
        for comp, t1, t2 in zip(self.space.components, self.traces, other.traces):
            o, n = _common_window(t1, t2)
            yield comp, _refine(comp, t1, o, n), _refine(comp, t2, o, n)

    def _combine(self, other: ClopenSet, op) -> ClopenSet:
        traces = [Trace(a.offset, a.length, op(a.words, b.words)) for _, a, b in self._aligned(other)]
        return ClopenSet(self.space, traces)

    def union(self, other: ClopenSet) -> ClopenSet:
        return self._combine(other, frozenset.union)

    def intersect(self, other: ClopenSet) -> ClopenSet:
        return self._combine(other, frozenset.intersection)

    def difference(self, other: ClopenSet) -> ClopenSet:
        return self._combine(other, frozenset.difference)

    def complement(self) -> ClopenSet:
        traces = []
        for comp, t in zip(self.space.components, self.traces):
            lang = frozenset(comp.language(t.length))
            traces.append(Trace(t.offset, t.length, lang - t.words))
        return ClopenSet(self.space, traces)

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __invert__ = complement

    def issubset(self, other: ClopenSet) -> bool:
        return all(a.words <= b.words for _, a, b in self._aligned(other))

    __le__ = issubset

    def isdisjoint(self, other: ClopenSet) -> bool:
        return all(not (a.words & b.words) for _, a, b in self._aligned(other))

    def __eq__(self, other):
        if not isinstance(other, ClopenSet):
            return NotImplemented
        if other.space is not self.space:
            return False
        return all(a.words == b.words for _, a, b in self._aligned(other))

    def __hash__(self):
        return hash((id(self.space), tuple(t.is_empty for t in self.traces)))

    def shift_image(self, n: int) -> ClopenSet:
        """``phi**n`` of this set, for the left shift ``(phi x)_k = x_{k+1}``."""
        traces = [
            t if t.length == 0 else Trace(t.offset - n, t.length, t.words) for t in self.traces
        ]
        return ClopenSet(self.space, traces)

    def coarsen(self) -> ClopenSet:
        """The same set over greedily shrunk windows (drop right, then left coordinates)."""
        traces = []
        for comp, t in zip(self.space.components, self.traces):
            while t.length > 0:
                if t.length == 1 and t.words == frozenset(comp.language(1)):
                    t = FULL_TRACE
                    break
                right = Trace(t.offset, t.length - 1, frozenset(w[:-1] for w in t.words))
                left = Trace(t.offset + 1, t.length - 1, frozenset(w[1:] for w in t.words))
                for cand in (right, left):
                    if cand.length and _refine(comp, cand, t.offset, t.length).words == t.words:
                        t = cand
                        break
                else:
                    break
            traces.append(t)
        return ClopenSet(self.space, traces)

    def cylinders(self) -> Iterator[tuple[int, int, str]]:
        """``(component, offset, word)`` for each cylinder, in sorted order."""
        for i, t in enumerate(self.traces):
            for w in sorted(t.words):
                yield i, t.offset, w

    # -- measure ------------------------------------------------------------

    def measure_vector(self) -> MeasureVector:
        if self._measure is None:
            entries = []
            for comp, t in zip(self.space.components, self.traces):
                freqs = comp.word_frequencies(t.length)
                total = RealAlgebraic(comp.perron)
                for w in sorted(t.words):
                    total = total + freqs[w]
                entries.append(total)
            self._measure = MeasureVector(entries)
        return self._measure

    # -- notation -----------------------------------------------------------

    def to_notation(self) -> str:
        terms = []
        for i, t in enumerate(self.traces):
            if t.is_empty:
                continue
            if t.length == 0:
                terms.append(f"{i}:0:*")
            else:
                terms.append(f"{i}:{t.offset}:{'|'.join(sorted(t.words))}")
        return "+".join(terms) if terms else "0:0:"

    @classmethod
    def parse(cls, space: SystemSpace, text: str) -> ClopenSet:
        text = text.strip()
        if not text:
            raise NotationError("empty set notation")
        result = cls.empty(space)
        for term in text.split("+"):
            result = result.union(cls._parse_term(space, term.strip()))
        return result

    @classmethod
    def _parse_term(cls, space: SystemSpace, term: str) -> ClopenSet:
        negate = term.startswith("~")
        if negate:
            term = term[1:]
        parts = term.split(":")
        if len(parts) != 3:
            raise NotationError(f"term {term!r} is not comp:offset:words")
        comp_s, off_s, body = parts
        try:
            comp = space.component_index(comp_s)
            offset = int(off_s)
        except (KeyError, IndexError, ValueError) as exc:
            raise NotationError(f"bad component or offset in {term!r}: {exc}") from None
        if body == "*":
            s = cls.full_component(space, comp)
        else:
            words = [w for w in body.split("|")] if body else []
            if any(not w for w in words):
                raise NotationError(f"empty word in {term!r}")
            try:
                s = cls.from_words(space, comp, words, offset)
            except ValueError as exc:
                raise NotationError(str(exc)) from None
        return s.complement() if negate else s

    def __repr__(self):
        return f"ClopenSet({self.to_notation()!r})"
