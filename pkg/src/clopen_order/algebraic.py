"""Exact real algebraic numbers living in ``Q[x]/(q)``.

A value is a polynomial representative ``r`` evaluated at one distinguished
real root ``lam`` of a squarefree integer polynomial ``q``.  The root is pinned
down by a half-open isolating interval ``(lo, hi]`` with dyadic endpoints.

``q`` need not be irreducible.  Equality is decided at ``lam`` only: ``r(lam)``
vanishes iff ``gcd(r, q)`` has a root inside the isolating interval.  Nonzero
signs come from interval evaluation on successively bisected intervals, so no
floating point enters any decision.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from functools import cached_property

from . import poly

__all__ = [
    "AlgebraicContext",
    "RealAlgebraic",
    "isolate_perron_root",
    "compare_values",
    "rational_between",
    "to_decimal",
    "to_exact",
    "from_exact",
]

# initial isolation tightness: width <= 2**-32 of the root magnitude
_INITIAL_BITS = 32


class AlgebraicContext:
    """A squarefree modulus together with one isolated real root of it."""

    __slots__ = ("modulus", "lo", "hi", "_lock", "_intervals", "__dict__")

    def __init__(self, modulus, lo, hi):
        modulus = poly.primitive(poly.trim(modulus))
        if poly.degree(modulus) < 1:
            raise ValueError("modulus must have positive degree")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "lo", Fraction(lo))
        object.__setattr__(self, "hi", Fraction(hi))
        object.__setattr__(self, "_lock", threading.Lock())
        object.__setattr__(self, "_intervals", [(self.lo, self.hi)])

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicContext is immutable")

    @classmethod
    def for_rational(cls, c) -> AlgebraicContext:
        c = Fraction(c)
        return cls((-c.numerator, c.denominator), c, c)

    @property
    def is_rational(self) -> bool:
        return poly.degree(self.modulus) == 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("context root is not rational")
        a0, a1 = self.modulus
        return Fraction(-a0, a1)

    @cached_property
    def sturm(self):
        return poly.sturm_sequence(self.modulus)

    def validate(self) -> None:
        if not poly.is_squarefree(self.modulus):
            raise ValueError("modulus is not squarefree")
        if self.is_rational:
            if not self.lo <= self.rational_value <= self.hi:
                raise ValueError("interval does not contain the rational root")
            return
        if poly.count_roots(self.sturm, self.lo, self.hi) != 1:
            raise ValueError("interval does not isolate exactly one root")

    def interval(self, level: int = 0) -> tuple[Fraction, Fraction]:
        """The isolating interval after ``level`` extra bisections."""
        ivs = self._intervals
        if level < len(ivs):
            return ivs[level]
        with self._lock:
            while len(ivs) <= level:
                lo, hi = ivs[-1]
                ivs.append(self._bisect(lo, hi))
            return ivs[level]

    def _bisect(self, lo, hi):
        if lo == hi:
            return lo, hi
        mid = (lo + hi) / 2
        if poly.evaluate(self.modulus, mid) == 0 and poly.count_roots(self.sturm, lo, mid) == 1:
            return mid, mid
        if poly.count_roots(self.sturm, lo, mid) == 1:
            return lo, mid
        return mid, hi

    def refined(self, level: int) -> AlgebraicContext:
        lo, hi = self.interval(level)
        return AlgebraicContext(self.modulus, lo, hi)

    def root_in_interval(self, p) -> bool:
        """Whether polynomial ``p`` vanishes at the distinguished root."""
        p = poly.trim(p)
        if not p:
            return True
        if poly.degree(p) == 0:
            return False
        if self.is_rational:
            return poly.evaluate(p, self.rational_value) == 0
        g = poly.gcd(p, self.modulus)
        if poly.degree(g) < 1:
            return False
        lo, hi = self.interval(0)
        if lo == hi:
            return poly.evaluate(g, lo) == 0
        return poly.count_roots(poly.sturm_sequence(g), lo, hi) >= 1

    def _key(self):
        return (self.modulus, self.lo, self.hi)

    def __eq__(self, other):
        if not isinstance(other, AlgebraicContext):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"AlgebraicContext({poly.to_string(self.modulus)}, ({self.lo}, {self.hi}])"


def _rational_root_in(p, lo, hi):
    """A rational root of integer polynomial ``p`` lying in ``[lo, hi]``, if one is found."""
    lc = abs(p[-1])
    if lc > 10**6:
        return None
    for d in range(1, lc + 1):
        if lc % d:
            continue
        for num in range((lo * d).__floor__(), (hi * d).__ceil__() + 1):
            c = Fraction(num, d)
            if lo <= c <= hi and poly.evaluate(p, c) == 0:
                return c
    return None


def isolate_perron_root(p) -> AlgebraicContext:
    """Isolate the largest real root of squarefree ``p``; it must be positive."""
    p = poly.primitive(poly.trim(p))
    if poly.degree(p) < 1:
        raise ValueError("no Perron root")
    if not poly.is_squarefree(p):
        raise ValueError("polynomial is not squarefree")
    if poly.degree(p) == 1:
        c = Fraction(-p[0], p[1])
        if c <= 0:
            raise ValueError("no Perron root")
        return AlgebraicContext.for_rational(c)
    seq = poly.sturm_sequence(p)
    bound = poly.cauchy_bound(p)
    hi = Fraction(1)
    while hi < bound:
        hi *= 2
    lo = Fraction(0)
    if poly.count_roots(seq, lo, hi) == 0:
        raise ValueError("no Perron root")
    while True:
        if poly.count_roots(seq, lo, hi) == 1 and (hi - lo) * 2**_INITIAL_BITS <= hi:
            break
        mid = (lo + hi) / 2
        if poly.count_roots(seq, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    c = _rational_root_in(p, lo, hi)
    if c is not None:
        return AlgebraicContext.for_rational(c)
    return AlgebraicContext(p, lo, hi)


def _as_fraction_poly(rep):
    return poly.trim(Fraction(c) for c in rep)


class RealAlgebraic:
    """The real number ``representative(lam)`` for the root ``lam`` of a context."""

    __slots__ = ("context", "rep", "_sign")

    def __init__(self, context: AlgebraicContext, rep=()):
        rep = _as_fraction_poly(rep)
        if poly.degree(rep) >= poly.degree(context.modulus):
            rep = poly.rem(rep, context.modulus)
        if context.is_rational and rep:
            rep = poly.trim((Fraction(poly.evaluate(rep, context.rational_value)),))
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "_sign", None)

    def __setattr__(self, name, value):
        raise AttributeError("RealAlgebraic is immutable")

    @classmethod
    def rational(cls, q, context: AlgebraicContext | None = None) -> RealAlgebraic:
        q = Fraction(q)
        if context is None:
            context = AlgebraicContext.for_rational(q)
        return cls(context, (q,))

    @classmethod
    def generator(cls, context: AlgebraicContext) -> RealAlgebraic:
        """The distinguished root itself."""
        return cls(context, poly.X)

    @property
    def is_constant(self) -> bool:
        return poly.degree(self.rep) <= 0

    def as_fraction(self) -> Fraction | None:
        """The exact rational value when the representative is constant."""
        if not self.rep:
            return Fraction(0)
        if poly.degree(self.rep) == 0:
            return Fraction(self.rep[0])
        return None

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> tuple[AlgebraicContext, tuple, tuple]:
        if isinstance(other, (int, Fraction)):
            return self.context, self.rep, (Fraction(other),) if other else ()
        if not isinstance(other, RealAlgebraic):
            raise TypeError(f"cannot combine RealAlgebraic with {type(other).__name__}")
        if other.context == self.context:
            return self.context, self.rep, other.rep
        if other.is_constant:
            return self.context, self.rep, other.rep
        if self.is_constant:
            return other.context, self.rep, other.rep
        raise ValueError("context mismatch")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        try:
            ctx, a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RealAlgebraic(ctx, poly.add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RealAlgebraic(self.context, poly.neg(self.rep))

    def __sub__(self, other):
        try:
            ctx, a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RealAlgebraic(ctx, poly.sub(a, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            ctx, a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RealAlgebraic(ctx, poly.mul(a, b))

    __rmul__ = __mul__

    def multiply_rational(self, q) -> RealAlgebraic:
        return RealAlgebraic(self.context, poly.scale(self.rep, Fraction(q)))

    def inverse(self) -> RealAlgebraic:
        if self.sign() == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.as_fraction()
        if c is not None:
            return RealAlgebraic(self.context, (1 / c,))
        # r may be a zero divisor mod q; invert modulo the cofactor that still
        # vanishes at the root, which is all that evaluation at the root sees
        q = self.context.modulus
        g = poly.gcd(self.rep, q)
        cof = poly.divmod_poly(q, g)[0] if poly.degree(g) > 0 else q
        h, s, _ = poly.extended_gcd(self.rep, cof)
        if poly.degree(h) != 0:
            raise ArithmeticError("representative not invertible at the root")
        return RealAlgebraic(self.context, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.multiply_rational(1 / Fraction(other))
        try:
            ctx, _, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * RealAlgebraic(ctx, b).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- sign and comparison --------------------------------------------------

    def enclosure(self, level: int = 0) -> tuple[Fraction, Fraction]:
        c = self.as_fraction()
        if c is not None:
            return c, c
        lo, hi = self.context.interval(level)
        return poly.evaluate_interval(self.rep, lo, hi)

    def sign(self) -> int:
        if self._sign is None:
            object.__setattr__(self, "_sign", self._compute_sign())
        return self._sign

    def _compute_sign(self) -> int:
        c = self.as_fraction()
        if c is not None:
            return (c > 0) - (c < 0)
        if self.context.root_in_interval(self.rep):
            return 0
        level = 0
        while True:
            lo, hi = self.enclosure(level)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            level += 1

    def __bool__(self):
        return self.sign() != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RealAlgebraic)):
            return compare_values(self, other) == 0
        return NotImplemented

    __hash__ = None

    def __lt__(self, other):
        return compare_values(self, other) < 0

    def __le__(self, other):
        return compare_values(self, other) <= 0

    def __gt__(self, other):
        return compare_values(self, other) > 0

    def __ge__(self, other):
        return compare_values(self, other) >= 0

    def __float__(self):
        # display only
        lo, hi = self.enclosure(24)
        return float((lo + hi) / 2)

    def __repr__(self):
        c = self.as_fraction()
        if c is not None:
            return f"RealAlgebraic({c})"
        return f"RealAlgebraic({poly.to_string(self.rep)} ~ {to_decimal(self, 10)})"

    # -- cross-context support -----------------------------------------------------

    def annihilator(self):
        """A squarefree integer polynomial vanishing at this value.

        Characteristic polynomial of multiplication by the representative on
        ``Q[x]/(q)``; its roots are the representative evaluated at every root
        of ``q``.
        """
        c = self.as_fraction()
        if c is not None:
            return poly.primitive((-c, 1))
        q = self.context.modulus
        d = poly.degree(q)
        cols = []
        basis = poly.ONE
        for _ in range(d):
            col = poly.rem(poly.mul(self.rep, basis), q)
            cols.append([col[i] if i < len(col) else 0 for i in range(d)])
            basis = poly.mul(basis, poly.X)
        matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
        return poly.squarefree_part(poly.characteristic_polynomial(matrix))


def _lift(v) -> RealAlgebraic:
    if isinstance(v, RealAlgebraic):
        return v
    return RealAlgebraic.rational(v)


def _closed_root_count(seq, p, lo, hi) -> int:
    return poly.count_roots(seq, lo, hi) + (poly.evaluate(p, lo) == 0)


def _isolating_enclosure(v: RealAlgebraic, ann, seq, level: int = 0):
    while True:
        lo, hi = v.enclosure(level)
        if _closed_root_count(seq, ann, lo, hi) == 1:
            return lo, hi, level
        level += 1


def compare_values(v, w) -> int:
    """Exact sign of ``v - w``; ``v`` and ``w`` may live in different contexts."""
    v, w = _lift(v), _lift(w)
    if v.context == w.context or v.is_constant or w.is_constant:
        return (v - w).sign()
    pv, pw = v.annihilator(), w.annihilator()
    sv, sw = poly.sturm_sequence(pv), poly.sturm_sequence(pw)
    a1, b1, lv = _isolating_enclosure(v, pv, sv)
    a2, b2, lw = _isolating_enclosure(w, pw, sw)
    lo, hi = max(a1, a2), min(b1, b2)
    if lo <= hi:
        g = poly.primitive(poly.gcd(pv, pw))
        if poly.degree(g) >= 1 and _closed_root_count(poly.sturm_sequence(g), g, lo, hi) >= 1:
            return 0
    while True:
        if b1 < a2:
            return -1
        if b2 < a1:
            return 1
        lv += 1
        lw += 1
        a1, b1 = v.enclosure(lv)
        a2, b2 = w.enclosure(lw)


def _mediant_search(lo, hi) -> Fraction:
    # Stern-Brocot descent for 0 <= lo < hi, with galloping along runs
    def above_lo(x):
        return compare_values(lo, x) < 0

    def below_hi(x):
        return compare_values(hi, x) > 0

    a, b, c, d = 0, 1, 1, 0
    while True:
        m = Fraction(a + c, b + d)
        if not above_lo(m):
            # move left bound toward c/d: largest k with (a+kc)/(b+kd) <= lo
            k = _gallop(lambda k: not above_lo(Fraction(a + k * c, b + k * d)))
            a, b = a + k * c, b + k * d
        elif not below_hi(m):
            k = _gallop(lambda k: not below_hi(Fraction(k * a + c, k * b + d)))
            c, d = k * a + c, k * b + d
        else:
            return m


def _gallop(pred) -> int:
    """Largest k >= 1 with pred(k) true, for pred monotone decreasing and pred(1) true."""
    lo, hi = 1, 2
    while pred(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def rational_between(lo, hi) -> Fraction:
    """The rational of least denominator strictly between ``lo`` and ``hi``."""
    lo, hi = _lift(lo), _lift(hi)
    if compare_values(lo, hi) >= 0:
        raise ValueError("rational_between requires lo < hi")
    if lo.sign() < 0 < hi.sign():
        return Fraction(0)
    if hi.sign() <= 0:
        return -_mediant_search(-hi, -lo)
    return _mediant_search(lo, hi)


def to_decimal(v, digits: int = 12) -> str:
    """Correctly rounded (half-even) fixed-point rendering with ``digits`` places."""
    v = _lift(v)
    scale_ = 10**digits
    level = 0
    while True:
        lo, hi = v.enclosure(level)
        if (hi - lo) * scale_ * 10 < 1:
            break
        level += 4
    k = (lo * scale_).__floor__()
    while compare_values(v, Fraction(k, scale_)) < 0:
        k -= 1
    while compare_values(v, Fraction(k + 1, scale_)) >= 0:
        k += 1
    s = compare_values(v, Fraction(2 * k + 1, 2 * scale_))
    if s > 0 or (s == 0 and k % 2 == 1):
        k += 1
    sign = "-" if k < 0 else ""
    k = abs(k)
    if digits == 0:
        return f"{sign}{k}"
    whole, frac = divmod(k, scale_)
    return f"{sign}{whole}.{frac:0{digits}d}"


_EXACT_RE = re.compile(r"^\[(.*)\] mod \[(.*)\] @ \((.*), (.*)\]$")


def to_exact(v) -> str:
    """Lossless text encoding; :func:`from_exact` inverts it."""
    v = _lift(v)
    c = v.as_fraction()
    if c is not None:
        return str(c)
    ctx = v.context
    rep = ", ".join(str(x) for x in v.rep)
    mod = ", ".join(str(x) for x in ctx.modulus)
    return f"[{rep}] mod [{mod}] @ ({ctx.lo}, {ctx.hi}]"


def from_exact(text: str) -> RealAlgebraic:
    text = text.strip()
    m = _EXACT_RE.match(text)
    if m is None:
        return RealAlgebraic.rational(Fraction(text))
    rep = [Fraction(s) for s in m.group(1).split(",")]
    mod = [int(s) for s in m.group(2).split(",")]
    ctx = AlgebraicContext(mod, Fraction(m.group(3)), Fraction(m.group(4)))
    ctx.validate()
    return RealAlgebraic(ctx, rep)
