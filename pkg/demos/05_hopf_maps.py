"""Finite Hopf equivalences: cut a set into pieces and shift each piece."""

from clopen_order import ClopenSet, HopfMap, SubshiftComponent, SystemSpace, search_embedding, search_equivalence, thue_morse, verify

tm = SystemSpace([SubshiftComponent(thue_morse(), "tm")], "tm")
S = lambda text: ClopenSet.parse(tm, text)  # noqa: E731

# [ba] splits into [bab] and [baab]; shifting by 1 and 2 lands exactly on [ab].
m = HopfMap(S("0:0:ba"), S("0:0:ab"), ((S("0:0:bab"), 1), (S("0:0:baab"), 2)))
print("hand-made map:", verify(m, "equivalence"))

found = search_equivalence(S("0:0:ba"), S("0:0:ab"), shift_bound=2, level=4)
print("search:", found.record())

# Equal measures are necessary, so this search stops before it starts.
print("[ab] into [aa]:", search_embedding(S("0:0:ab"), S("0:0:aa"), 3, 4))

# Embeddings may leave part of the target uncovered.
e = search_embedding(S("0:0:aa"), S("0:0:ab"), 2, 4)
print("[aa] into [ab]:", e.record(), verify(e, "embedding"))
