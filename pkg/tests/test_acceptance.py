"""Acceptance criteria, one test per criterion.

Each test builds its own spaces so that timings include language and
frequency computation.  The terminal summary prints one PASS/FAIL line per
criterion.
"""

import io
import json
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from clopen_order.algebraic import RealAlgebraic, to_decimal
from clopen_order.cli import main
from clopen_order.clopen import ClopenSet, MeasureVector
from clopen_order.comparability import Kind, compare_vectors, find_incomparable, verify_total_comparability
from clopen_order.group import (
    Decomposition,
    GroupElement,
    Membership,
    Outcome,
    Sign,
    check_pointed,
    check_total_order,
    classify_sign,
    is_in_D,
    lemma_three_check,
    nontotal_ratio,
    sign_procedure,
    witness_nontotal,
)
from clopen_order.hopf import HopfMap, search_embedding, search_equivalence, verify
from clopen_order.systems import SubshiftComponent, SystemSpace, fibonacci, thue_morse, tribonacci


def space(*subs):
    names = {fibonacci(): "fib", thue_morse(): "tm", tribonacci(): "trib"}
    comps = [SubshiftComponent(s, f"{names[s]}{i}") for i, s in enumerate(subs)]
    return SystemSpace(comps, "+".join(c.name for c in comps))


def all_spaces():
    return {
        "fib": space(fibonacci()),
        "tm": space(thue_morse()),
        "trib": space(tribonacci()),
        "fib+tm": space(fibonacci(), thue_morse()),
        "tm+tm": space(thue_morse(), thue_morse()),
        "tm+tm+tm": space(thue_morse(), thue_morse(), thue_morse()),
    }


def detail(request, text):
    request.node.user_properties.append(("detail", text))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def rationals(*values):
    return MeasureVector.of_rationals(values)


@pytest.mark.criterion(1, "exact measures, cross-checked against sigma^20(a)")
def test_criterion_1_exact_measures(request):
    with Timer() as t:
        tm = SubshiftComponent(thue_morse())
        fib = SubshiftComponent(fibonacci())
        f2 = tm.word_frequencies(2)
        expected = {"aa": Fraction(1, 6), "ab": Fraction(1, 3), "ba": Fraction(1, 3), "bb": Fraction(1, 6)}
        assert {w: f.as_fraction() for w, f in f2.items()} == expected
        lam = RealAlgebraic.generator(fib.perron)
        assert (lam * lam - lam - 1).sign() == 0
        f1 = fib.word_frequencies(1)
        assert (f1["a"] - (lam - 1)).sign() == 0
        assert (f1["b"] - (2 - lam)).sign() == 0
        worst = 0.0
        for comp, freqs in ((tm, f2), (fib, f1)):
            word = "".join(comp.substitution.iterate("a", 20))
            n = len(next(iter(freqs)))
            counts = Counter(word[i:i + n] for i in range(len(word) - n + 1))
            total = len(word) - n + 1
            for w, f in freqs.items():
                worst = max(worst, abs(float(to_decimal(f, 15)) - counts[w] / total))
        assert worst < 1e-3
    assert t.seconds < 5
    detail(request, f"max empirical gap {worst:.1e}, {t.seconds:.2f}s")


@pytest.mark.criterion(2, "unique ergodicity implies total comparability (exhaustive)")
def test_criterion_2_total_comparability(request):
    with Timer() as t:
        fib = verify_total_comparability(space(fibonacci()), 3, budget=1 << 30)
        tm = verify_total_comparability(space(thue_morse()), 2, budget=1 << 30)
    assert not fib.capped and not tm.capped
    assert (fib.sets, fib.pairs) == (16, 120) and tm.sets == 16
    assert fib.incomparable == 0 and tm.incomparable == 0
    assert t.seconds < 120
    detail(request, f"fib L=3 {fib.pairs} pairs, tm L=2 {tm.pairs} pairs, 0 incomparable, {t.seconds:.2f}s")


@pytest.mark.criterion(3, "two ergodic measures give an incomparable pair")
def test_criterion_3_incomparable_pair(request):
    with Timer() as t:
        buf = io.StringIO()
        code = main(["find-incomparable", "fib_tm_union", "--max-len", "1", "--json"], buf)
    rec = json.loads(buf.getvalue())
    assert code == 0 and rec["kind"] == "INCOMPARABLE"
    assert 1 in rec["signs"] and -1 in rec["signs"]
    assert t.seconds < 5
    detail(request, f"{rec['a']} vs {rec['b']}, signs {rec['signs']}, {t.seconds:.2f}s")


@pytest.mark.criterion(4, "(1/2, 1/3) vs (1/2, 2/3) incomparable both ways")
def test_criterion_4_two_measure_vectors(request):
    a = rationals(Fraction(1, 2), Fraction(1, 3))
    b = rationals(Fraction(1, 2), Fraction(2, 3))
    assert compare_vectors(a, b).kind is Kind.INCOMPARABLE
    assert compare_vectors(b, a).kind is Kind.INCOMPARABLE
    detail(request, f"signs {list(compare_vectors(a, b).signs)}")


@pytest.mark.criterion(5, "mixed-sign element exists iff incomparable pair exists")
def test_criterion_5_linkage(request):
    rows = []
    with Timer() as t:
        for name, sp in all_spaces().items():
            witness = check_total_order(sp, coeff=3, max_len=2).witness
            pair = find_incomparable(sp, 2)
            assert (witness is not None) == (pair is not None), name
            assert (witness is not None) == (not sp.is_uniquely_ergodic), name
            if witness is not None:
                assert classify_sign(witness) is Sign.NEITHER
            rows.append(f"{name}:{'both' if pair else 'neither'}")
    assert t.seconds < 120
    detail(request, f"{', '.join(rows)}; {t.seconds:.2f}s")


@pytest.mark.criterion(6, "sign procedure agrees with integral signs on Fibonacci")
def test_criterion_6_sign_procedure(request):
    with Timer() as t:
        fib = space(fibonacci())
        worked = sign_procedure(Decomposition([ClopenSet.full(fib)], [ClopenSet.cylinder(fib, 0, "a")]), 6)
        assert worked.outcome is Outcome.POSITIVE
        assert worked.steps[0]["witness"] == ClopenSet.cylinder(fib, 0, "b").to_notation()
        comp = fib.components[0]
        rng = random.Random(6)

        def pick():
            while True:
                n = rng.randint(1, 2)
                words = [w for w in comp.language(n) if rng.random() < 0.5]
                if words:
                    return ClopenSet.from_words(fib, 0, words)

        stuck = decided = 0
        for _ in range(100):
            d = Decomposition([pick() for _ in range(rng.randint(1, 3))], [pick() for _ in range(rng.randint(1, 2))])
            r = sign_procedure(d, 6)
            s = classify_sign(d.element())
            if r.outcome is Outcome.STUCK:
                stuck += 1
                continue
            decided += 1
            allowed = (Sign.POSITIVE, Sign.ZERO) if r.outcome is Outcome.POSITIVE else (Sign.NEGATIVE, Sign.ZERO)
            assert s in allowed, (d, r.record(), s)
    assert stuck < 20
    assert t.seconds < 300
    detail(request, f"{decided} decided, STUCK rate {stuck}%, {t.seconds:.2f}s")


@pytest.mark.criterion(7, "non-totality witness with integrals (1, -1)")
def test_criterion_7_witness(request):
    sp = space(fibonacci(), thue_morse())
    a = ClopenSet.full_component(sp, 0)
    ratio, _, _ = nontotal_ratio(a)
    assert ratio == Fraction(1, 2)
    g = witness_nontotal(a)
    assert g.integral_vector() == rationals(1, -1)
    assert g == 2 * GroupElement.from_clopen(a) - GroupElement.order_unit(sp)
    assert classify_sign(g) is Sign.NEITHER
    detail(request, f"n/m = {ratio}, integrals {g.integral_vector().exact()}")


@pytest.mark.criterion(8, "cone pointedness over 500 random elements per space")
def test_criterion_8_pointedness(request):
    with Timer() as t:
        reports = {name: check_pointed(sp, samples=500, seed=8) for name, sp in all_spaces().items()}
    assert all(r.violations == 0 for r in reports.values())
    assert t.seconds < 60
    detail(request, f"{len(reports)} spaces x 500, 0 violations, {t.seconds:.2f}s")


@pytest.mark.criterion(9, "A >= B iff the difference is a clopen class")
def test_criterion_9_lemma(request):
    fib = space(fibonacci())
    tm = space(thue_morse())
    r = lemma_three_check(ClopenSet.full(fib), ClopenSet.cylinder(fib, 0, "a"), 4)
    assert r.consistent and r.forward.witness == ClopenSet.cylinder(fib, 0, "b")
    r = lemma_three_check(ClopenSet.cylinder(tm, 0, "ab"), ClopenSet.cylinder(tm, 0, "ba"), 4)
    assert r.consistent and r.verdict.kind is Kind.EQ and r.forward.witness.is_empty()
    r = lemma_three_check(ClopenSet.cylinder(tm, 0, "ab"), ClopenSet.cylinder(tm, 0, "aa"), 4)
    assert r.consistent and r.forward.status is Membership.YES
    assert r.forward.witness.measure_vector() == rationals(Fraction(1, 6))
    witness = r.forward.witness.to_notation()
    # the reverse order never yields a clopen class
    g = GroupElement.from_clopen(ClopenSet.cylinder(tm, 0, "aa")) - GroupElement.from_clopen(ClopenSet.cylinder(tm, 0, "ab"))
    assert is_in_D(g, 4).status is not Membership.YES
    detail(request, f"witnesses [b], empty, {witness} (1/6)")


@pytest.mark.criterion(10, "Hopf equivalence [ba] ~ [ab] verified and rediscovered")
def test_criterion_10_hopf(request):
    tm = space(thue_morse())

    def cyl(w):
        return ClopenSet.cylinder(tm, 0, w)

    known = HopfMap(cyl("ba"), cyl("ab"), ((cyl("bab"), 1), (cyl("baab"), 2)))
    assert verify(known, "equivalence")
    found = search_equivalence(cyl("ba"), cyl("ab"), 2, 4)
    assert found is not None and verify(found, "equivalence")
    maps = [(known, "equivalence"), (found, "equivalence")]
    for w in ("ab", "aab", "aba"):
        m = search_equivalence(cyl(w), cyl(w).shift_image(1), 2, 3)
        maps.append((m, "equivalence"))
    m = search_embedding(cyl("aa"), cyl("ab"), 2, 4)
    maps.append((m, "embedding"))
    for m, mode in maps:
        assert m is not None and verify(m, mode)
        signs = (m.target.measure_vector() - m.source.measure_vector()).signs()
        if mode == "equivalence":
            assert all(s == 0 for s in signs)
        else:
            assert all(s >= 0 for s in signs)
    pieces = ", ".join(f"{p.to_notation()}@{n}" for p, n in found.pieces)
    detail(request, f"search found {pieces}; {len(maps)} maps obey the measure law")


DETERMINISM_COMMANDS = [
    ["measures", "tm", "--block-len", "2"],
    ["measures", "fib", "--block-len", "1"],
    ["total-comparability", "fib", "--max-len", "3"],
    ["total-comparability", "tm", "--max-len", "2"],
    ["find-incomparable", "fib_tm_union", "--max-len", "1"],
    ["compare", "fib_tm_union", "0:0:*", "1:0:*"],
    ["compare", "tm", "0:0:ab", "0:0:aa"],
    ["total-order", "fib", "--coeff", "3", "--max-len", "2"],
    ["total-order", "fib_tm_union", "--coeff", "3", "--max-len", "2"],
    ["total-order", "tm_tm_union", "--coeff", "3", "--max-len", "2"],
    ["sign-procedure", "fib", "--pos", "0:0:*", "--neg", "0:0:a", "--level", "6"],
    ["sign-procedure", "fib_tm_union", "--pos", "0:0:*", "--neg", "1:0:*"],
    ["witness-nontotal", "fib_tm_union", "0:0:*"],
    ["lemma-three", "fib", "0:0:*", "0:0:a", "--level", "4"],
    ["lemma-three", "tm", "0:0:ab", "0:0:ba", "--level", "4"],
    ["lemma-three", "tm", "0:0:ab", "0:0:aa", "--level", "4"],
    ["hopf", "tm", "0:0:ba", "0:0:ab", "--mode", "equiv", "--shift", "2", "--level", "4"],
    ["selftest", "fib_tm_union"],
]


@pytest.mark.criterion(11, "byte-identical machine output on repeated runs")
def test_criterion_11_determinism(request):
    for argv in DETERMINISM_COMMANDS:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            code = main(argv + ["--json"], buf)
            outs.append((code, buf.getvalue().encode()))
        assert outs[0] == outs[1], argv
        assert outs[0][1], argv
    detail(request, f"{len(DETERMINISM_COMMANDS)} commands run twice")
