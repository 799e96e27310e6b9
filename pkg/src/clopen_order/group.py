"""The ordered group ``G = C(X, Z) / Z`` of integer step functions modulo infinitesimals.

An element carries a concrete representative ``f = sum m_w * chi_[w]`` (one
window per component) and is identified with its integral vector
``(integral of f d mu_i)_i`` over the ergodic measures.  Two representatives
are equal in ``G`` exactly when their integral vectors agree, since the
invariant measures are spanned by the ergodic list.

Positive cone test: on a uniquely ergodic component, ``[f] >= 0`` iff the
integral is ``>= 0`` (unique ergodicity forces a total order on that
component).  On a disjoint union the cone splits componentwise, so the
sign pattern of the integral vector decides membership.
:func:`find_nonneg_representative` is the constructive cross-check.
"""

from __future__ import annotations

import enum
import itertools
import random
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebraic import RealAlgebraic, compare_values, rational_between
from .clopen import ClopenSet, MeasureVector, Trace
from .comparability import Kind, Verdict, compare
from .systems import SubshiftComponent, SystemSpace

__all__ = [
    "Part",
    "GroupElement",
    "Sign",
    "classify_sign",
    "random_element",
    "state_evaluate",
    "PointednessReport",
    "check_pointed",
    "TotalOrderReport",
    "check_total_order",
    "nontotal_ratio",
    "witness_nontotal",
    "Membership",
    "DMembership",
    "is_in_D",
    "Decomposition",
    "Outcome",
    "ProcedureResult",
    "sign_procedure",
    "find_nonneg_representative",
    "LemmaReport",
    "lemma_three_check",
]


@dataclass(frozen=True)
class Part:
    """Coefficients of a step function on one component, over one window."""

    offset: int
    length: int
    coeffs: tuple[tuple[str, int], ...] = ()

    @classmethod
    def build(cls, offset: int, length: int, coeffs: Mapping[str, int]) -> Part:
        if length == 0:
            offset = 0
        items = tuple(sorted((w, int(m)) for w, m in coeffs.items() if m))
        return cls(offset, length, items)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_nonnegative(self) -> bool:
        return all(m >= 0 for _, m in self.coeffs)

    def refine(self, comp: SubshiftComponent, offset: int, length: int) -> Part:
        if self.is_zero:
            return Part(offset, length)
        if self.length == 0:
            m = self.as_dict().get("", 0)
            return Part.build(offset, length, {u: m for u in comp.language(length)})
        start = self.offset - offset
        stop = start + self.length
        if start < 0 or stop > length:
            raise ValueError("refinement window must contain the current window")
        d = self.as_dict()
        return Part.build(offset, length, {u: d.get(u[start:stop], 0) for u in comp.language(length)})

    def integral(self, comp: SubshiftComponent) -> RealAlgebraic:
        freqs = comp.word_frequencies(self.length)
        total = RealAlgebraic(comp.perron)
        for w, m in self.coeffs:
            total = total + freqs[w].multiply_rational(m)
        return total


def _window(p: Part, q: Part) -> tuple[int, int]:
    if p.length == 0 or p.is_zero:
        return (q.offset, q.length) if not q.is_zero else (p.offset, p.length)
    if q.length == 0 or q.is_zero:
        return p.offset, p.length
    lo = min(p.offset, q.offset)
    hi = max(p.offset + p.length, q.offset + q.length)
    return lo, hi - lo


class GroupElement:
    """``[f]`` with a concrete integer step-function representative ``f``."""

    __slots__ = ("space", "parts", "_integral")

    def __init__(self, space: SystemSpace, parts: Iterable[Part]):
        parts = tuple(parts)
        if len(parts) != len(space):
            raise ValueError("one part per component is required")
        for comp, p in zip(space.components, parts):
            lang = set(comp.language(p.length))
            if any(w not in lang for w, _ in p.coeffs):
                raise ValueError("coefficient on an inadmissible word")
        self.space = space
        self.parts = parts
        self._integral = None

    @classmethod
    def zero(cls, space: SystemSpace) -> GroupElement:
        return cls(space, [Part(0, 0)] * len(space))

    @classmethod
    def from_clopen(cls, a: ClopenSet) -> GroupElement:
        parts = [Part.build(t.offset, t.length, {w: 1 for w in t.words}) for t in a.traces]
        return cls(a.space, parts)

    @classmethod
    def order_unit(cls, space: SystemSpace) -> GroupElement:
        return cls.from_clopen(ClopenSet.full(space))

    @classmethod
    def from_coefficients(cls, space: SystemSpace, component, coeffs: Mapping[str, int], offset: int = 0) -> GroupElement:
        i = space.component_index(component)
        lengths = {len(w) for w in coeffs}
        if len(lengths) > 1:
            raise ValueError("all words of a part must have the same length")
        n = lengths.pop() if lengths else 0
        parts = [Part(0, 0)] * len(space)
        parts[i] = Part.build(offset, n, coeffs)
        return cls(space, parts)

    # -- group operations ---------------------------------------------------

    def _check(self, other: GroupElement) -> None:
        if not isinstance(other, GroupElement) or other.space is not self.space:
            raise ValueError("group elements belong to different spaces")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        parts = []
        for comp, p, q in zip(self.space.components, self.parts, other.parts):
            o, n = _window(p, q)
            pr, qr = p.refine(comp, o, n), q.refine(comp, o, n)
            d = pr.as_dict()
            for w, m in qr.coeffs:
                d[w] = d.get(w, 0) + m
            parts.append(Part.build(o, n, d))
        return GroupElement(self.space, parts)

    def __neg__(self) -> GroupElement:
        return self.scale(-1)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def scale(self, k: int) -> GroupElement:
        k = int(k)
        parts = [Part.build(p.offset, p.length, {w: k * m for w, m in p.coeffs}) for p in self.parts]
        out = GroupElement(self.space, parts)
        if self._integral is not None:
            out._integral = self._integral.scaled(k)
        return out

    def __rmul__(self, k: int) -> GroupElement:
        return self.scale(k)

    __mul__ = __rmul__

    # -- integrals ----------------------------------------------------------

    def integral_vector(self) -> MeasureVector:
        if self._integral is None:
            self._integral = MeasureVector(
                p.integral(c) for c, p in zip(self.space.components, self.parts)
            )
        return self._integral

    def __eq__(self, other):
        """Equality in the quotient: equal integral vectors."""
        if not isinstance(other, GroupElement):
            return NotImplemented
        return other.space is self.space and self.integral_vector() == other.integral_vector()

    __hash__ = None

    def same_representative(self, other: GroupElement) -> bool:
        """Equality of the step functions themselves (finer than ``==``)."""
        self._check(other)
        diff = self - other
        return all(p.is_zero for p in diff.parts)

    def is_nonnegative_function(self) -> bool:
        return all(p.is_nonnegative() for p in self.parts)

    def record(self, digits: int = 12) -> dict:
        iv = self.integral_vector()
        return {
            "parts": [
                {"window": [p.offset, p.length], "coefficients": dict(p.coeffs)} for p in self.parts
            ],
            "integral": {"exact": iv.exact(), "decimal": iv.decimals(digits)},
        }

    def __repr__(self):
        chunks = []
        for i, p in enumerate(self.parts):
            if p.is_zero:
                continue
            terms = " ".join(f"{m:+d}[{w or '*'}]" for w, m in p.coeffs)
            chunks.append(f"{i}@{p.offset}: {terms}")
        return f"GroupElement({'; '.join(chunks) or '0'})"


def state_evaluate(g: GroupElement, index: int) -> RealAlgebraic:
    """``tau_i([f]) = integral of f d mu_i``."""
    iv = g.integral_vector()
    if not 0 <= index < len(iv):
        raise IndexError(f"measure index {index} out of range")
    return iv[index]


class Sign(str, enum.Enum):
    ZERO = "ZERO"
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    NEITHER = "NEITHER"


def _classify_signs(signs: Sequence[int]) -> Sign:
    s = set(signs)
    if s <= {0}:
        return Sign.ZERO
    if -1 not in s:
        return Sign.POSITIVE
    if 1 not in s:
        return Sign.NEGATIVE
    return Sign.NEITHER


def classify_sign(g: GroupElement) -> Sign:
    return _classify_signs(g.integral_vector().signs())


def _random_part(comp: SubshiftComponent, rng: random.Random, max_len: int, coeff: int) -> Part:
    n = rng.randint(0, max_len)
    offset = rng.randint(-2, 2)
    return Part.build(offset, n, {w: rng.randint(-coeff, coeff) for w in comp.language(n)})


def random_element(space: SystemSpace, rng: random.Random, max_len: int = 2, coeff: int = 3) -> GroupElement:
    return GroupElement(space, [_random_part(c, rng, max_len, coeff) for c in space.components])


@dataclass
class PointednessReport:
    samples: int
    violations: int
    counts: dict[str, int]
    first_violation: GroupElement | None = None

    def record(self) -> dict:
        return {"samples": self.samples, "violations": self.violations, "counts": dict(self.counts)}


def check_pointed(space: SystemSpace, samples: int = 500, seed: int = 0, max_len: int = 2, coeff: int = 3) -> PointednessReport:
    """Sample elements and check ``G+ & -G+ == {0}`` plus sign symmetry."""
    rng = random.Random(seed)
    counts = {s.value: 0 for s in Sign}
    violations = 0
    first = None
    for k in range(samples):
        g = GroupElement.zero(space) if k == 0 else random_element(space, rng, max_len, coeff)
        s, t = classify_sign(g), classify_sign(-g)
        counts[s.value] += 1
        in_cone = s in (Sign.ZERO, Sign.POSITIVE)
        neg_in_cone = t in (Sign.ZERO, Sign.POSITIVE)
        zero = all(x.sign() == 0 for x in g.integral_vector())
        ok = (
            (in_cone and neg_in_cone) == zero
            and (s is Sign.ZERO) == zero
            and (t is Sign.ZERO) == zero
            and (s is not Sign.POSITIVE or t is Sign.NEGATIVE)
            and (s is not Sign.NEITHER or t is Sign.NEITHER)
        )
        if not ok:
            violations += 1
            if first is None:
                first = g
    return PointednessReport(samples, violations, counts, first)


@dataclass
class TotalOrderReport:
    elements: int
    part_counts: list[int]
    witness: GroupElement | None

    @property
    def total(self) -> bool:
        return self.witness is None

    def record(self) -> dict:
        out = {"elements": self.elements, "part_counts": self.part_counts, "total": self.total}
        if self.witness is not None:
            out["witness"] = self.witness.record()
        return out


def _enumerate_parts(comp: SubshiftComponent, coeff: int, max_len: int):
    rng = [0] + [s * k for k in range(1, coeff + 1) for s in (1, -1)]
    for n in range(0, max_len + 1):
        words = comp.language(n)
        for ms in itertools.product(rng, repeat=len(words)):
            yield Part.build(0, n, dict(zip(words, ms)))


def check_total_order(space: SystemSpace, coeff: int = 3, max_len: int = 2) -> TotalOrderReport:
    """Search elements with coefficients in ``[-coeff, coeff]`` over windows ``<= max_len``.

    The candidate elements are all tuples of per-component parts.  The sign
    of each integral entry depends on one part only, so a NEITHER element
    exists iff some component has a strictly positive part and another has a
    strictly negative one; the first such combination is returned.
    """
    first_pos: list[Part | None] = []
    first_neg: list[Part | None] = []
    counts = []
    for comp in space.components:
        pos = neg = None
        seen = 0
        for p in _enumerate_parts(comp, coeff, max_len):
            seen += 1
            if pos is not None and neg is not None:
                continue
            s = p.integral(comp).sign()
            if s > 0 and pos is None:
                pos = p
            elif s < 0 and neg is None:
                neg = p
        first_pos.append(pos)
        first_neg.append(neg)
        counts.append(seen)
    elements = 1
    for c in counts:
        elements *= c
    k = len(space)
    for i in range(k):
        for j in range(k):
            if i != j and first_pos[i] is not None and first_neg[j] is not None:
                parts = [Part(0, 0)] * k
                parts[i], parts[j] = first_pos[i], first_neg[j]
                g = GroupElement(space, parts)
                assert classify_sign(g) is Sign.NEITHER
                return TotalOrderReport(elements, counts, g)
    return TotalOrderReport(elements, counts, None)


def _extreme_indices(values: Sequence[RealAlgebraic]) -> tuple[int, int]:
    hi = lo = 0
    for i in range(1, len(values)):
        if compare_values(values[i], values[hi]) > 0:
            hi = i
        if compare_values(values[i], values[lo]) < 0:
            lo = i
    return hi, lo


def nontotal_ratio(a: ClopenSet) -> tuple[Fraction, int, int]:
    """``(n/m, i_max, i_min)`` with ``mu_min(A) < n/m < mu_max(A)``, least denominator."""
    mv = a.measure_vector()
    hi, lo = _extreme_indices(mv.entries)
    if compare_values(mv[hi], mv[lo]) == 0:
        raise ValueError("measure spread required")
    return rational_between(mv[lo], mv[hi]), hi, lo


def witness_nontotal(a: ClopenSet) -> GroupElement:
    """``m*[chi_A] - n*[chi_X]``: positive under one measure, negative under another."""
    r, _, _ = nontotal_ratio(a)
    m, n = r.denominator, r.numerator
    g = GroupElement.from_clopen(a).scale(m) - GroupElement.order_unit(a.space).scale(n)
    if classify_sign(g) is not Sign.NEITHER:
        raise ArithmeticError("witness is not of mixed sign")
    return g


# -- D membership -------------------------------------------------------------

class Membership(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class DMembership:
    status: Membership
    witness: ClopenSet | None = None
    reason: str = ""

    def record(self) -> dict:
        out = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_notation()
        if self.reason:
            out["reason"] = self.reason
        return out


_SCALE_BITS = 64


def _scaled_enclosure(v: RealAlgebraic) -> tuple[int, int]:
    level = 0
    while True:
        lo, hi = v.enclosure(level)
        a = (lo * 2**_SCALE_BITS).__floor__()
        b = (hi * 2**_SCALE_BITS).__ceil__()
        if b - a <= 4:
            return a, b
        level += 8


def _subset_sums(values, idx):
    """All ``(lo, hi, mask)`` subset-sum enclosures over the given indices."""
    sums = [(0, 0, 0)]
    for i in idx:
        lo, hi = values[i]
        sums += [(a + lo, b + hi, m | (1 << i)) for a, b, m in sums]
    return sums


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _find_subset(freqs: Sequence[RealAlgebraic], target: RealAlgebraic) -> list[int] | None:
    """Indices of a subset summing exactly to ``target`` (meet in the middle)."""
    k = len(freqs)
    enc = [_scaled_enclosure(f) for f in freqs]
    t_lo, t_hi = _scaled_enclosure(target)
    half = k // 2
    left = sorted(_subset_sums(enc, range(half)))
    right = sorted(_subset_sums(enc, range(half, k)), key=lambda s: (_popcount(s[2]), s[2]))
    left_lo = [s[0] for s in left]
    slack = 4 * k + 4
    for r_lo, r_hi, r_mask in right:
        start = bisect_left(left_lo, t_lo - r_hi - slack)
        for l_lo, l_hi, l_mask in left[start:]:
            if l_lo + r_lo > t_hi:
                break
            if l_hi + r_hi < t_lo:
                continue
            mask = l_mask | r_mask
            chosen = [i for i in range(k) if mask >> i & 1]
            total = RealAlgebraic(target.context) if not chosen else freqs[chosen[0]]
            for i in chosen[1:]:
                total = total + freqs[i]
            if compare_values(total, target) == 0:
                return chosen
    return None


def _component_clopen_trace(comp: SubshiftComponent, target: RealAlgebraic, max_len: int) -> Trace | None:
    if target.sign() == 0:
        return Trace(0, 0, frozenset())
    if compare_values(target, 1) == 0:
        return Trace(0, 0, frozenset({""}))
    for n in range(1, max_len + 1):
        words = comp.language(n)
        freqs = comp.word_frequencies(n)
        chosen = _find_subset([freqs[w] for w in words], target)
        if chosen is not None:
            return Trace(0, n, frozenset(words[i] for i in chosen))
    return None


def is_in_D(g: GroupElement, max_len: int) -> DMembership:
    """Is ``g`` the class of a clopen indicator?  Searches windows up to ``max_len``."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    iv = g.integral_vector()
    for i, t in enumerate(iv):
        if t.sign() < 0:
            return DMembership(Membership.NO, reason=f"negative integral under measure {i}")
        if compare_values(t, 1) > 0:
            return DMembership(Membership.NO, reason=f"integral exceeds 1 under measure {i}")
    traces = []
    for i, (comp, t) in enumerate(zip(g.space.components, iv)):
        tr = _component_clopen_trace(comp, t, max_len)
        if tr is None:
            return DMembership(Membership.UNKNOWN, reason=f"no word set up to length {max_len} in component {i}")
        traces.append(tr)
    return DMembership(Membership.YES, ClopenSet(g.space, traces))


# -- the sign-decision procedure ----------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """``a_1 + ... + a_n - b_1 - ... - b_m`` with every term a nonzero clopen class."""

    positives: tuple[ClopenSet, ...]
    negatives: tuple[ClopenSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        terms = self.positives + self.negatives
        if not terms:
            raise ValueError("decomposition needs at least one term")
        space = terms[0].space
        for s in terms:
            if s.space is not space:
                raise ValueError("decomposition terms belong to different spaces")
            if all(x.sign() == 0 for x in s.measure_vector()):
                raise ValueError(f"term {s.to_notation()} has zero measure")

    @property
    def space(self) -> SystemSpace:
        return (self.positives + self.negatives)[0].space

    def element(self) -> GroupElement:
        g = GroupElement.zero(self.space)
        for s in self.positives:
            g = g + GroupElement.from_clopen(s)
        for s in self.negatives:
            g = g - GroupElement.from_clopen(s)
        return g


class Outcome(str, enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    STUCK = "STUCK"


@dataclass
class ProcedureResult:
    outcome: Outcome
    steps: list[dict] = field(default_factory=list)
    stuck_step: int | None = None
    reason: str = ""

    def record(self) -> dict:
        out = {"outcome": self.outcome.value, "steps": self.steps}
        if self.outcome is Outcome.STUCK:
            out["stuck_step"] = self.stuck_step
            out["reason"] = self.reason
        return out


def _sum_classes(sets: Iterable[ClopenSet], space: SystemSpace) -> GroupElement:
    g = GroupElement.zero(space)
    for s in sets:
        g = g + GroupElement.from_clopen(s)
    return g


def sign_procedure(d: Decomposition, max_len: int) -> ProcedureResult:
    """Decide ``a >= 0`` or ``a <= 0`` by absorbing one negative term per step.

    Step ``j``: if (remaining positives) - b_j is ``<= 0`` then ``a <= 0``.
    Otherwise find the least ``k`` whose prefix sum minus ``b_j`` is the class
    of a nonempty clopen set ``C``, replace that prefix by ``C`` and drop
    ``b_j``.  Surviving all negative terms means ``a >= 0``.  The prefix
    search is bounded by ``max_len``; when it finds nothing the result is
    STUCK rather than a guess.
    """
    space = d.space
    pos = list(d.positives)
    result = ProcedureResult(Outcome.POSITIVE)
    for j, b in enumerate(d.negatives, start=1):
        gb = GroupElement.from_clopen(b)
        test = _sum_classes(pos, space) - gb
        sign = classify_sign(test)
        step = {"step": j, "b": b.to_notation(), "test": sign.value}
        if sign in (Sign.ZERO, Sign.NEGATIVE):
            step["result"] = "a <= 0"
            result.steps.append(step)
            result.outcome = Outcome.NEGATIVE
            return result
        statuses = []
        replaced = False
        for k in range(1, len(pos) + 1):
            c = _sum_classes(pos[:k], space) - gb
            if all(x.sign() == 0 for x in c.integral_vector()):
                statuses.append("zero")
                continue
            mem = is_in_D(c, max_len)
            statuses.append(mem.status.value)
            if mem.status is Membership.YES:
                step["k"] = k
                step["witness"] = mem.witness.to_notation()
                pos = [mem.witness] + pos[k:]
                replaced = True
                break
        if not replaced:
            step["prefixes"] = statuses
            result.steps.append(step)
            result.outcome = Outcome.STUCK
            result.stuck_step = j
            result.reason = "no prefix sum found in D within bounds: " + ", ".join(statuses)
            return result
        result.steps.append(step)
    return result


# -- nonnegative representatives ----------------------------------------------

def _nonneg_solution(freqs: Sequence[RealAlgebraic], target: RealAlgebraic, budget: int) -> list[int] | None:
    enc = [_scaled_enclosure(f) for f in freqs]
    t_lo, t_hi = _scaled_enclosure(target)
    k = len(freqs)
    counts = [0] * k
    nodes = 0

    def exact_match() -> bool:
        total = RealAlgebraic(target.context)
        for f, c in zip(freqs, counts):
            if c:
                total = total + f.multiply_rational(c)
        return compare_values(total, target) == 0

    def dfs(i: int, acc_lo: int, acc_hi: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return False
        if acc_lo > t_hi:
            return False
        if i == k:
            return acc_hi >= t_lo and exact_match()
        f_lo, f_hi = enc[i]
        top = (t_hi - acc_lo) // max(f_lo, 1)
        for c in range(top, -1, -1):
            counts[i] = c
            if dfs(i + 1, acc_lo + c * f_lo, acc_hi + c * f_hi):
                return True
        counts[i] = 0
        return False

    return list(counts) if dfs(0, 0, 0) else None


def find_nonneg_representative(g: GroupElement, max_len: int, budget: int = 200_000) -> GroupElement | None:
    """A step function ``h >= 0`` with the same integral vector as ``g``, if found."""
    if classify_sign(g) not in (Sign.ZERO, Sign.POSITIVE):
        raise ValueError("element is not in the positive cone")
    parts = []
    for comp, t in zip(g.space.components, g.integral_vector()):
        if t.sign() == 0:
            parts.append(Part(0, 0))
            continue
        found = None
        c = t.as_fraction()
        if c is not None and c.denominator == 1:
            found = Part.build(0, 0, {"": int(c)})
        for n in range(1, max_len + 1):
            if found is not None:
                break
            words = comp.language(n)
            freqs = comp.word_frequencies(n)
            sol = _nonneg_solution([freqs[w] for w in words], t, budget)
            if sol is not None:
                found = Part.build(0, n, dict(zip(words, sol)))
        if found is None:
            return None
        parts.append(found)
    return GroupElement(g.space, parts)


# -- the three-condition check -------------------------------------------------

@dataclass
class LemmaReport:
    verdict: Verdict
    forward: DMembership
    reverse: DMembership | None
    consistent: bool

    def record(self) -> dict:
        out = {
            "verdict": self.verdict.record(),
            "forward": self.forward.record(),
            "consistent": self.consistent,
        }
        if self.reverse is not None:
            out["reverse"] = self.reverse.record()
        return out


def lemma_three_check(a: ClopenSet, b: ClopenSet, max_len: int) -> LemmaReport:
    """On a minimal space: ``A >= B`` iff ``[chi_A] - [chi_B]`` is a clopen class.

    The forward search runs regardless of the verdict; finding a clopen
    witness when ``A >= B`` fails would be a contradiction and marks the
    report inconsistent.  For a strict ``A < B`` the reverse difference is
    searched as well.
    """
    if len(a.space) != 1:
        raise ValueError("Lemma requires minimality")
    verdict = compare(a, b)
    ga, gb = GroupElement.from_clopen(a), GroupElement.from_clopen(b)
    forward = is_in_D(ga - gb, max_len)
    reverse = None
    if verdict.geq:
        consistent = forward.status is not Membership.NO
        if forward.status is Membership.YES:
            consistent = forward.witness.measure_vector() == (ga - gb).integral_vector()
    else:
        consistent = forward.status is not Membership.YES
        if verdict.kind is Kind.LEQ_STRICT:
            reverse = is_in_D(gb - ga, max_len)
            if reverse.status is Membership.YES:
                consistent = consistent and reverse.witness.measure_vector() == (gb - ga).integral_vector()
    return LemmaReport(verdict, forward, reverse, consistent)

