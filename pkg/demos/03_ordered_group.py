"""Integer step functions modulo infinitesimals, and their order."""

from clopen_order import (
    ClopenSet,
    GroupElement,
    SubshiftComponent,
    SystemSpace,
    check_total_order,
    classify_sign,
    find_nonneg_representative,
    fibonacci,
    is_in_D,
    thue_morse,
    witness_nontotal,
)

fib = SystemSpace([SubshiftComponent(fibonacci(), "fib")], "fib")
X = GroupElement.order_unit(fib)
a = GroupElement.from_clopen(ClopenSet.parse(fib, "0:0:a"))

g = 2 * a - X
print("2[a] - [X] =", g, "integral", g.integral_vector().decimals(9), classify_sign(g).value)

# The class is positive, so some nonnegative step function represents it.
h = find_nonneg_representative(g, 3)
print("nonnegative representative:", h, "same class:", h == g)

# Which classes come from clopen sets?
print("[X] - [a] in D:", is_in_D(X - a, 2).record())
print("[a] - [X] in D:", is_in_D(a - X, 2).record())

# Totality fails on a union: m[A] - n[X] is positive on one side, negative on the other.
union = SystemSpace([SubshiftComponent(fibonacci(), "fib"), SubshiftComponent(thue_morse(), "tm")], "fib+tm")
w = witness_nontotal(ClopenSet.full_component(union, 0))
print("witness:", w, "integrals", w.integral_vector().exact(), classify_sign(w).value)

for space in (fib, union):
    rep = check_total_order(space, coeff=3, max_len=2)
    print(space.name, "totally ordered within bounds:", rep.total)
