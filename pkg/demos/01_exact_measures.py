"""Word frequencies of substitution subshifts, computed exactly."""

from collections import Counter

from clopen_order import RealAlgebraic, SubshiftComponent, fibonacci, thue_morse, to_decimal

# The Fibonacci substitution a -> ab, b -> a has Perron root the golden ratio.
fib = SubshiftComponent(fibonacci(), "fib")
print("Perron context:", fib.perron.modulus, "root in", (float(fib.perron.lo), float(fib.perron.hi)))

lam = RealAlgebraic.generator(fib.perron)
freqs = fib.word_frequencies(1)
print("freq(a) == lambda - 1:", freqs["a"] == lam - 1)
print("freq(b) == 2 - lambda:", freqs["b"] == 2 - lam)

# Longer words live in the same number field.
for w, f in fib.word_frequencies(3).items():
    print(f"  [{w}]  {to_decimal(f, 15)}")

# Thue-Morse has integer Perron root 2, so everything is rational.
tm = SubshiftComponent(thue_morse(), "tm")
print("Thue-Morse 2-blocks:", {w: str(f.as_fraction()) for w, f in tm.word_frequencies(2).items()})

# Empirical check on a long iterate.
word = "".join(tm.substitution.iterate("a", 20))
counts = Counter(word[i:i + 2] for i in range(len(word) - 1))
print("empirical:", {w: round(c / (len(word) - 1), 6) for w, c in sorted(counts.items())})

# Complexity (number of admissible words of each length).
print("complexity fib:", [fib.complexity(n) for n in range(1, 9)])
print("complexity tm: ", [tm.complexity(n) for n in range(1, 9)])
