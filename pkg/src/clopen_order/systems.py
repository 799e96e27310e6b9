"""Primitive substitution subshifts and finite disjoint unions of them.

Each component is minimal and uniquely ergodic; a union of ``k`` components
therefore carries exactly ``k`` ergodic measures with disjoint clopen supports.
Cylinder measures are exact: the Perron eigenvector of the ``n``-block
substitution matrix, solved over the component's algebraic context.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from . import poly
from .algebraic import AlgebraicContext, RealAlgebraic, isolate_perron_root

__all__ = [
    "Substitution",
    "SubshiftComponent",
    "SystemSpace",
    "MeasureHandle",
    "perron_vector",
    "fibonacci",
    "thue_morse",
    "tribonacci",
    "RESERVED_SYMBOLS",
]

# characters used by the clopen set notation
RESERVED_SYMBOLS = frozenset(":|+*~ \t\n")


class Substitution:
    """A map from symbols to nonempty words over a finite ordered alphabet.

    Symbols are strings.  Letter-level substitutions use one-character symbols
    so that words can be plain ``str``; block substitutions use longer symbols
    and tuple images.
    """

    def __init__(self, alphabet: Sequence[str], rules: Mapping[str, Sequence[str]]):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet symbols must be distinct")
        if set(rules) != set(alphabet):
            raise ValueError("rules must be given for exactly the alphabet symbols")
        known = set(alphabet)
        frozen = {}
        for s in alphabet:
            img = tuple(rules[s])
            if not img:
                raise ValueError(f"image of {s!r} is empty")
            bad = [t for t in img if t not in known]
            if bad:
                raise ValueError(f"image of {s!r} uses unknown symbols {bad}")
            frozen[s] = img
        self.alphabet = alphabet
        self.rules = MappingProxyType(frozen)
        self._index = {s: i for i, s in enumerate(alphabet)}

    @classmethod
    def from_strings(cls, rules: Mapping[str, str], alphabet: Sequence[str] | None = None):
        """Build from ``{"a": "ab", "b": "a"}``; alphabet defaults to sorted keys."""
        if alphabet is None:
            alphabet = sorted(rules)
        return cls(alphabet, {k: tuple(v) for k, v in rules.items()})

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def index(self, symbol: str) -> int:
        return self._index[symbol]

    def image(self, word) -> tuple:
        out = []
        for s in word:
            out.extend(self.rules[s])
        return tuple(out)

    def iterate(self, word, times: int) -> tuple:
        w = tuple(word)
        for _ in range(times):
            w = self.image(w)
        return w

    def matrix(self) -> list[list[int]]:
        """Abelianization: entry ``[s][t]`` counts ``s`` in the image of ``t``."""
        k = self.size
        m = [[0] * k for _ in range(k)]
        for t in self.alphabet:
            j = self._index[t]
            for s in self.rules[t]:
                m[self._index[s]][j] += 1
        return m

    def is_primitive(self) -> bool:
        """Some power ``M**e`` with ``e <= (k-1)**2 + 1`` is entrywise positive."""
        k = self.size
        base = [[v > 0 for v in row] for row in self.matrix()]
        power = base
        for _ in range((k - 1) ** 2 + 1):
            if all(all(row) for row in power):
                return True
            power = [
                [any(power[i][t] and base[t][j] for t in range(k)) for j in range(k)]
                for i in range(k)
            ]
        return False

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.alphabet == other.alphabet and dict(self.rules) == dict(other.rules)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.rules[s] for s in self.alphabet)))

    def __repr__(self):
        body = ", ".join(f"{s}->{''.join(self.rules[s])}" for s in self.alphabet)
        return f"Substitution({body})"


def perron_vector(matrix, context: AlgebraicContext) -> list[RealAlgebraic]:
    """Normalized kernel vector of ``matrix - lam*I`` over the context.

    Gaussian elimination; a pivot is any entry whose value at the root is
    nonzero, decided by the exact sign test.
    """
    n = len(matrix)
    lam = RealAlgebraic.generator(context)
    zero = RealAlgebraic(context)
    a = [[RealAlgebraic(context, (v,)) if v else zero for v in row] for row in matrix]
    for i in range(n):
        a[i][i] = a[i][i] - lam
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col].sign() != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = a[row][col].inverse()
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col].sign() != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ArithmeticError(f"Perron eigenspace has dimension {len(free)}, expected 1")
    f = free[0]
    vec = [zero] * n
    vec[f] = RealAlgebraic(context, (1,))
    for r, c in enumerate(pivots):
        vec[c] = -a[r][f]
    total = zero
    for x in vec:
        total = total + x
    vec = [x / total for x in vec]
    if any(x.sign() != 1 for x in vec):
        raise ArithmeticError("Perron vector is not strictly positive")
    return vec


class SubshiftComponent:
    """The subshift of a primitive substitution on one-character symbols."""

    def __init__(self, substitution: Substitution, name: str = ""):
        for s in substitution.alphabet:
            if len(s) != 1 or s in RESERVED_SYMBOLS:
                raise ValueError(f"symbol {s!r} must be a single non-reserved character")
        if not substitution.is_primitive():
            raise ValueError(f"substitution {substitution!r} is not primitive")
        self.substitution = substitution
        self.name = name
        charpoly = poly.characteristic_polynomial(substitution.matrix())
        self.perron: AlgebraicContext = isolate_perron_root(poly.squarefree_part(charpoly))
        self._lock = threading.RLock()
        self._languages: dict[int, tuple[str, ...]] = {}
        self._frequencies: dict[int, dict[str, RealAlgebraic]] = {}
        self._two_letter: frozenset[str] | None = None

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"SubshiftComponent({label}{self.substitution!r})"

    def _sigma(self, word: str) -> str:
        return "".join(self.substitution.image(word))

    def _legal_pairs(self) -> frozenset[str]:
        if self._two_letter is None:
            found = set()
            for a in self.substitution.alphabet:
                img = self._sigma(a)
                found.update(img[i:i + 2] for i in range(len(img) - 1))
            frontier = list(found)
            while frontier:
                nxt = []
                for w in frontier:
                    img = self._sigma(w)
                    for i in range(len(img) - 1):
                        u = img[i:i + 2]
                        if u not in found:
                            found.add(u)
                            nxt.append(u)
                frontier = nxt
            self._two_letter = frozenset(found)
        return self._two_letter

    def language(self, n: int) -> tuple[str, ...]:
        """Sorted tuple of all admissible words of length ``n``."""
        if n < 0:
            raise ValueError("word length must be nonnegative")
        cached = self._languages.get(n)
        if cached is not None:
            return cached
        with self._lock:
            if n not in self._languages:
                self._languages[n] = self._compute_language(n)
            return self._languages[n]

    def _compute_language(self, n: int) -> tuple[str, ...]:
        alphabet = self.substitution.alphabet
        if n == 0:
            return ("",)
        if n == 1:
            return tuple(sorted(alphabet))
        if all(len(self.substitution.rules[s]) == 1 for s in alphabet):
            # primitive with all images of length one: a single fixed letter
            return (alphabet[0] * n,)
        pairs = sorted(self._legal_pairs())
        # once every sigma^r(letter) has length >= n-1, each n-factor of the
        # subshift sits inside sigma^r of some legal two-letter word
        r = 0
        while min(len(self.substitution.iterate(s, r)) for s in alphabet) < n - 1:
            r += 1
        found: set[str] = set()
        for extra in (0, 1):
            current = set()
            for w in pairs:
                img = "".join(self.substitution.iterate(w, r + extra))
                current.update(img[i:i + n] for i in range(len(img) - n + 1))
            if extra and current != found:
                raise ArithmeticError("factor set failed to stabilize")
            found |= current
        return tuple(sorted(found))

    def is_admissible(self, word: str) -> bool:
        return word in set(self.language(len(word)))

    def block_substitution(self, n: int) -> Substitution:
        """The induced substitution on admissible ``n``-blocks."""
        if n < 1:
            raise ValueError("block length must be positive")
        if n == 1:
            return self.substitution
        blocks = self.language(n)
        rules = {}
        for w in blocks:
            img = self._sigma(w)
            k = len(self.substitution.rules[w[0]])
            rules[w] = tuple(img[i:i + n] for i in range(k))
        return Substitution(blocks, rules)

    def word_frequencies(self, n: int) -> dict[str, RealAlgebraic]:
        """Exact measure of every length-``n`` cylinder."""
        cached = self._frequencies.get(n)
        if cached is not None:
            return cached
        with self._lock:
            if n not in self._frequencies:
                if n == 0:
                    freqs = {"": RealAlgebraic(self.perron, (1,))}
                else:
                    sub = self.block_substitution(n)
                    vec = perron_vector(sub.matrix(), self.perron)
                    freqs = dict(zip(sub.alphabet, vec))
                self._frequencies[n] = freqs
            return self._frequencies[n]

    def frequency(self, word: str) -> RealAlgebraic:
        freqs = self.word_frequencies(len(word))
        if word not in freqs:
            return RealAlgebraic(self.perron)
        return freqs[word]

    def complexity(self, n: int) -> int:
        return len(self.language(n))


@dataclass(frozen=True, eq=False)
class MeasureHandle:
    """The ergodic measure carried by one component of a space."""

    space: "SystemSpace"
    index: int

    def __call__(self, clopen) -> RealAlgebraic:
        if clopen.space is not self.space:
            raise ValueError("clopen set belongs to a different space")
        return clopen.measure_vector()[self.index]


class SystemSpace:
    """A disjoint union of primitive substitution subshifts; the map is the shift."""

    def __init__(self, components: Sequence[SubshiftComponent], name: str = ""):
        components = tuple(components)
        if not components:
            raise ValueError("a system needs at least one component")
        self.components = components
        self.name = name

    @classmethod
    def single(cls, substitution: Substitution, name: str = "") -> SystemSpace:
        return cls([SubshiftComponent(substitution, name)], name)

    def __len__(self):
        return len(self.components)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"SystemSpace({label}{len(self.components)} components)"

    def ergodic_measures(self) -> list[MeasureHandle]:
        return [MeasureHandle(self, i) for i in range(len(self.components))]

    @property
    def is_uniquely_ergodic(self) -> bool:
        return len(self.components) == 1

    def component_index(self, key) -> int:
        """Resolve a component by index or by name."""
        if isinstance(key, int) or (isinstance(key, str) and key.lstrip("-").isdigit()):
            i = int(key)
            if not 0 <= i < len(self.components):
                raise IndexError(f"component index {i} out of range")
            return i
        for i, c in enumerate(self.components):
            if c.name == key:
                return i
        raise KeyError(f"no component named {key!r}")


def fibonacci() -> Substitution:
    return Substitution.from_strings({"a": "ab", "b": "a"})


def thue_morse() -> Substitution:
    return Substitution.from_strings({"a": "ab", "b": "ba"})


def tribonacci() -> Substitution:
    return Substitution.from_strings({"a": "ab", "b": "ac", "c": "a"})
