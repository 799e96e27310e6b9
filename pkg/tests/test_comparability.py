import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from clopen_order.clopen import ClopenSet, MeasureVector
from clopen_order.comparability import (
    Kind,
    candidate_sets,
    compare,
    compare_vectors,
    find_incomparable,
    verify_total_comparability,
)


def vec(*values):
    return MeasureVector.of_rationals(values)


def test_two_measure_vectors_are_incomparable():
    left = vec(Fraction(1, 2), Fraction(1, 3))
    right = vec(Fraction(1, 2), Fraction(2, 3))
    assert compare_vectors(left, right).kind is Kind.INCOMPARABLE
    assert compare_vectors(right, left).kind is Kind.INCOMPARABLE
    v = compare_vectors(left, right)
    assert v.signs == (0, -1)
    assert v.witnesses == (1, 0)
    assert not v.geq and not v.leq and not v.comparable


@pytest.mark.parametrize(
    "signs, kind",
    [((0, 0), Kind.EQ), ((1, 1), Kind.GEQ_STRICT), ((-1, -1), Kind.LEQ_STRICT), ((1, 0), Kind.INCOMPARABLE), ((1, -1), Kind.INCOMPARABLE)],
)
def test_kind_from_signs(signs, kind):
    assert compare_vectors(vec(*signs), vec(0, 0)).kind is kind


def test_compare_examples(tm):
    a = ClopenSet.cylinder(tm, 0, "ab")
    assert compare(a, a).kind is Kind.EQ
    v = compare(a, ClopenSet.cylinder(tm, 0, "aa"))
    assert v.kind is Kind.GEQ_STRICT and v.geq and not v.leq
    rec = v.record()
    assert rec["kind"] == "GEQ_STRICT"
    assert rec["left"]["decimal"] == ["0.333333333333"]
    assert rec["right"]["exact"] == ["1/6"]


def test_compare_space_mismatch(tm, fib):
    with pytest.raises(ValueError):
        compare(ClopenSet.full(tm), ClopenSet.full(fib))


def test_find_incomparable_fib_tm(fib_tm):
    pair = find_incomparable(fib_tm, 1)
    assert pair is not None
    assert pair.a == ClopenSet.cylinder(fib_tm, 0, "a")
    assert pair.b == ClopenSet.cylinder(fib_tm, 1, "a")
    assert pair.verdict.signs == (1, -1)
    assert pair.verdict.kind is Kind.INCOMPARABLE


def test_find_incomparable_unique_ergodic(tm, fib):
    assert find_incomparable(tm, 3) is None
    assert find_incomparable(fib, 3) is None


def test_find_incomparable_identical_copies(tm_tm):
    pair = find_incomparable(tm_tm, 2)
    assert pair is not None and pair.verdict.opposite_strict
    aa = ClopenSet.cylinder(tm_tm, 0, "aa")
    ab = ClopenSet.cylinder(tm_tm, 0, "ab")
    v = compare(aa, ab)
    assert v.signs == (-1, 0)
    assert v.kind is Kind.INCOMPARABLE
    assert v.witnesses == (0, 1)


def test_candidate_order(fib_tm):
    cands = [c.to_notation() for c in candidate_sets(fib_tm, 1)]
    assert cands == ["0:0:a", "0:0:b", "0:0:a|b", "1:0:a", "1:0:b", "1:0:a|b"]
    with pytest.raises(ValueError):
        list(candidate_sets(fib_tm, 0))


def test_total_comparability_examples(fib, tm, fib_tm):
    r = verify_total_comparability(fib, 3, budget=1 << 20)
    assert (r.sets, r.pairs, r.incomparable, r.capped) == (16, 120, 0, False)
    r = verify_total_comparability(tm, 2, budget=1 << 20)
    assert (r.sets, r.incomparable) == (16, 0)
    r = verify_total_comparability(fib_tm, 1, budget=1 << 20)
    assert r.incomparable >= 1 and r.first_witness is not None
    assert r.record()["witness"]["verdict"]["kind"] == "INCOMPARABLE"


def test_total_comparability_sampling_is_deterministic(tm):
    a = verify_total_comparability(tm, 3, budget=20, seed=7)
    b = verify_total_comparability(tm, 3, budget=20, seed=7)
    assert a.capped and a.record() == b.record()
    assert a.incomparable == 0


# -- invariants ---------------------------------------------------------------


def _sets(space, max_len=2):
    return list(candidate_sets(space, max_len, max_union=2)) + [ClopenSet.empty(space), ClopenSet.full(space)]


@pytest.mark.parametrize("name", ["fib", "tm", "fib_tm", "tm_tm"])
def test_antisymmetry_and_empty(request, name):
    space = request.getfixturevalue(name)
    sets = _sets(space)
    empty = ClopenSet.empty(space)
    for a, b in itertools.combinations(sets, 2):
        ab, ba = compare(a, b), compare(b, a)
        flip = {Kind.GEQ_STRICT: Kind.LEQ_STRICT, Kind.LEQ_STRICT: Kind.GEQ_STRICT}
        assert ba.kind is flip.get(ab.kind, ab.kind)
        if space.is_uniquely_ergodic:
            assert ab.kind is not Kind.INCOMPARABLE
    for a in sets:
        v = compare(a, empty)
        assert -1 not in v.signs
        assert (v.kind is Kind.EQ) == a.is_empty()
        # on unions a set missing a component is (+, 0) against the empty set
        meets_all = all(not t.is_empty for t in a.traces)
        if space.is_uniquely_ergodic or meets_all or a.is_empty():
            assert v.kind in (Kind.EQ, Kind.GEQ_STRICT)
        else:
            assert v.kind is Kind.INCOMPARABLE


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20), st.integers(-6, 6), st.integers(0, 2))
def test_verdict_invariant_under_shift_and_refinement(tm_tm, i, j, n, pad):
    sets = _sets(tm_tm)
    a, b = sets[i % len(sets)], sets[j % len(sets)]
    base = compare(a, b)
    assert compare(a.shift_image(n), b.shift_image(n)).kind is base.kind
    ra, rb = a, b
    for k, t in enumerate(a.traces):
        if t.length:
            ra = ra.refine_to_window(t.offset - pad, t.length + 2 * pad, k)
    for k, t in enumerate(b.traces):
        if t.length:
            rb = rb.refine_to_window(t.offset, t.length + pad, k)
    assert compare(ra, rb).signs == base.signs
