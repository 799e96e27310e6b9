"""Comparing clopen sets by measure, with one ergodic measure and with two."""

from clopen_order import ClopenSet, SubshiftComponent, SystemSpace, compare, find_incomparable, fibonacci, thue_morse
from clopen_order.comparability import verify_total_comparability

fib = SystemSpace([SubshiftComponent(fibonacci(), "fib")], "fib")

# Sets are written comp:offset:words; here [ab] at 0 against [a] shifted by one.
a = ClopenSet.parse(fib, "0:0:ab")
b = ClopenSet.parse(fib, "0:1:a")
v = compare(a, b)
print(a, "vs", b, "->", v.kind.value, v.left.decimals(6), v.right.decimals(6))

# One ergodic measure: every pair of clopen sets is comparable.
report = verify_total_comparability(fib, 3, budget=1 << 20)
print("fib, window 3:", report.record())

# Glue Fibonacci and Thue-Morse side by side: two ergodic measures.
union = SystemSpace([SubshiftComponent(fibonacci(), "fib"), SubshiftComponent(thue_morse(), "tm")], "fib+tm")
pair = find_incomparable(union, 1)
print("incomparable:", pair.a.to_notation(), pair.b.to_notation(), "signs", pair.verdict.signs)

# A strict/equal mix is incomparable too.
tm2 = SystemSpace([SubshiftComponent(thue_morse(), "tm"), SubshiftComponent(thue_morse(), "tm#2")], "tm+tm")
v = compare(ClopenSet.parse(tm2, "0:0:aa"), ClopenSet.parse(tm2, "0:0:ab"))
print("[aa] vs [ab] in copy 0 of tm+tm:", v.kind.value, v.signs)
