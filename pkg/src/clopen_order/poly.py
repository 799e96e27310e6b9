"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.  Coefficients are ``int`` or
``Fraction``.  Everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1


def lead(p: Poly):
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    if c == 0:
        return ZERO
    return tuple(c * a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in p]
    dq = degree(q)
    lq = Fraction(lead(q))
    if len(r) <= dq:
        return ZERO, trim(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] / lq
        if c:
            quot[k - dq] = c
            for j in range(dq + 1):
                r[k - dq + j] -= c * q[j]
    return trim(quot), trim(r[:dq])


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return ZERO
    lc = Fraction(lead(p))
    return tuple(Fraction(c) / lc for c in p)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q (the zero polynomial if both are zero)."""
    p, q = trim(p), trim(q)
    while q:
        p, q = q, rem(p, q)
    return monic(p)


def extended_gcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        quo, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    inv = 1 / Fraction(lead(r0))
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(p: Poly) -> Poly:
    return trim(i * c for i, c in enumerate(p) if i > 0)


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_interval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a = min(prods) + c
        b = max(prods) + c
    return a, b


def primitive(p: Poly) -> Poly:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not p:
        return ZERO
    fr = [Fraction(c) for c in p]
    den = lcm(*(c.denominator for c in fr))
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def squarefree_part(p: Poly) -> Poly:
    """``p / gcd(p, p')`` as a primitive integer polynomial."""
    p = trim(p)
    if not p:
        raise ValueError("squarefree part of the zero polynomial is undefined")
    if degree(p) == 0:
        return (1,)
    g = gcd(p, derivative(p))
    return primitive(divmod_poly(p, g)[0])


def is_squarefree(p: Poly) -> bool:
    return degree(gcd(p, derivative(p))) == 0


def characteristic_polynomial(matrix) -> Poly:
    """``det(xI - M)`` by the Faddeev-LeVerrier recurrence (exact)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return ONE
    a = [[Fraction(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # m <- A m + c_{n-k+1} I
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        trace = sum(sum(a[i][t] * m[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -trace / k
    return trim(int(c) if c.denominator == 1 else c for c in coeffs)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(neg(r))
    return [s for s in seq if s]


def sign_variations(seq: list[Poly], x) -> int:
    last = 0
    count = 0
    for s in seq:
        v = evaluate(s, x)
        if v == 0:
            continue
        sgn = 1 if v > 0 else -1
        if last and sgn != last:
            count += 1
        last = sgn
    return count


def count_roots(seq: list[Poly], lo, hi) -> int:
    """Distinct real roots in the half-open interval ``(lo, hi]``.

    ``seq`` must be the Sturm sequence of a squarefree polynomial.
    """
    if lo >= hi:
        return 0
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: Poly) -> Fraction:
    lc = abs(Fraction(lead(p)))
    return 1 + max((abs(Fraction(c)) / lc for c in p[:-1]), default=Fraction(0))


def to_string(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
