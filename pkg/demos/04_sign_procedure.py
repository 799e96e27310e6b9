"""Deciding a1 + ... + an - b1 - ... - bm >= 0 by absorbing negative terms."""

import json

from clopen_order import ClopenSet, SubshiftComponent, SystemSpace, classify_sign, fibonacci, lemma_three_check, sign_procedure, thue_morse
from clopen_order.group import Decomposition

fib = SystemSpace([SubshiftComponent(fibonacci(), "fib")], "fib")
S = lambda text: ClopenSet.parse(fib, text)  # noqa: E731

d = Decomposition([S("0:0:*")], [S("0:0:a")])
print(json.dumps(sign_procedure(d, 6).record(), indent=1))

d = Decomposition([S("0:0:ab"), S("0:0:aa"), S("0:0:b")], [S("0:0:a"), S("0:0:ba")])
r = sign_procedure(d, 6)
print(r.outcome.value, "(integral sign:", classify_sign(d.element()).value + ")")
for step in r.steps:
    print("  ", step)

# On a union the procedure can get stuck, since comparability fails there.
union = SystemSpace([SubshiftComponent(fibonacci(), "fib"), SubshiftComponent(thue_morse(), "tm")], "fib+tm")
d = Decomposition([ClopenSet.parse(union, "0:0:*")], [ClopenSet.parse(union, "1:0:*")])
print(sign_procedure(d, 4).record())

# A >= B matches "[A] - [B] is the class of a clopen set".
tm = SystemSpace([SubshiftComponent(thue_morse(), "tm")], "tm")
print(lemma_three_check(ClopenSet.parse(tm, "0:0:ab"), ClopenSet.parse(tm, "0:0:aa"), 4).record())
