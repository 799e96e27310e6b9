"""Finite Hopf maps: piecewise powers of the shift between clopen sets.

A map from ``B`` into ``A`` is a finite clopen partition ``B = B_1 + ... + B_r``
with exponents ``n_i`` such that the images ``phi**n_i (B_i)`` are pairwise
disjoint inside ``A``.  It is an equivalence when the images cover ``A``.
Searches are bounded in both the exponents and the partition depth, and a
failed search never claims that no map exists.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .clopen import ClopenSet, Trace, _refine
from .comparability import compare
from .systems import SystemSpace

__all__ = [
    "HopfMap",
    "VerifyResult",
    "verify",
    "measure_obstruction",
    "search_embedding",
    "search_equivalence",
]

log = logging.getLogger(__name__)

EMBEDDING = "embedding"
EQUIVALENCE = "equivalence"


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def record(self) -> dict:
        return {"ok": self.ok, "clause": self.clause, "detail": self.detail}


@dataclass(frozen=True)
class HopfMap:
    source: ClopenSet
    target: ClopenSet
    pieces: tuple[tuple[ClopenSet, int], ...]

    def images(self) -> list[ClopenSet]:
        return [p.shift_image(n) for p, n in self.pieces]

    def __call__(self, point_cylinder: ClopenSet) -> ClopenSet:
        """Image of a subset lying inside one piece."""
        for p, n in self.pieces:
            if point_cylinder.issubset(p):
                return point_cylinder.shift_image(n)
        raise ValueError("set is not contained in a single piece")

    def record(self) -> dict:
        return {
            "source": self.source.to_notation(),
            "target": self.target.to_notation(),
            "pieces": [[p.to_notation(), n] for p, n in self.pieces],
        }

    @classmethod
    def from_record(cls, space: SystemSpace, record: dict) -> HopfMap:
        return cls(
            ClopenSet.parse(space, record["source"]),
            ClopenSet.parse(space, record["target"]),
            tuple((ClopenSet.parse(space, p), int(n)) for p, n in record["pieces"]),
        )


def verify(m: HopfMap, mode: str = EQUIVALENCE) -> VerifyResult:
    """Check the defining clauses exactly; report the first that fails."""
    if mode not in (EMBEDDING, EQUIVALENCE):
        raise ValueError(f"unknown mode {mode!r}")
    space = m.source.space
    sets = [m.target] + [p for p, _ in m.pieces]
    if any(s.space is not space for s in sets):
        return VerifyResult(False, "space", "sets belong to different spaces")
    pieces = [p for p, _ in m.pieces]
    for i, p in enumerate(pieces):
        if p.is_empty():
            return VerifyResult(False, "pieces nonempty", f"piece {i} is empty")
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if not pieces[i].isdisjoint(pieces[j]):
                return VerifyResult(False, "pieces disjoint", f"pieces {i} and {j} overlap")
    cover = ClopenSet.empty(space)
    for p in pieces:
        cover = cover | p
    if cover != m.source:
        return VerifyResult(False, "pieces cover source", "union of pieces differs from the source")
    images = m.images()
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if not images[i].isdisjoint(images[j]):
                return VerifyResult(False, "images disjoint", f"images {i} and {j} overlap")
    for i, img in enumerate(images):
        if not img.issubset(m.target):
            return VerifyResult(False, "images inside target", f"image {i} leaves the target")
    if mode == EQUIVALENCE:
        covered = ClopenSet.empty(space)
        for img in images:
            covered = covered | img
        if covered != m.target:
            return VerifyResult(False, "images cover target", "images do not exhaust the target")
    return VerifyResult(True)


def measure_obstruction(source: ClopenSet, target: ClopenSet, mode: str) -> str | None:
    """Why no map of the given kind can exist, judged by measures alone."""
    signs = (target.measure_vector() - source.measure_vector()).signs()
    if mode == EQUIVALENCE and any(signs):
        return f"measures differ (signs {list(signs)})"
    if mode == EMBEDDING and -1 in signs:
        return f"source outweighs target under measure {signs.index(-1)}"
    return None


def _shift_order(bound: int) -> list[int]:
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def _search(source: ClopenSet, target: ClopenSet, shift_bound: int, level: int, mode: str) -> HopfMap | None:
    if source.space is not target.space:
        raise ValueError("clopen sets belong to different spaces")
    reason = measure_obstruction(source, target, mode)
    if reason is not None:
        log.info("no %s from %s to %s: %s", mode, source.to_notation(), target.to_notation(), reason)
        return None
    space = source.space
    comps = space.components

    # split the source into cylinder pieces of depth >= level
    pieces = []  # (component, offset, word)
    for i, t in enumerate(source.traces):
        if t.is_empty:
            continue
        o = t.offset if t.length else 0
        n = max(t.length, level)
        r = _refine(comps[i], t, o, n)
        pieces += [(i, o, w) for w in sorted(r.words)]
    if not pieces:
        return HopfMap(source, target, ())

    shifts = _shift_order(shift_bound)
    # a common window per component holding the target and every candidate image
    windows = {}
    for i, t in enumerate(target.traces):
        spans = [(o - s, o - s + len(w)) for (c, o, w) in pieces if c == i for s in shifts]
        if t.length:
            spans.append((t.offset, t.end))
        if spans:
            lo = min(a for a, _ in spans)
            hi = max(b for _, b in spans)
            windows[i] = (lo, hi - lo)

    cells = set()
    for i, (o, n) in windows.items():
        cells.update((i, w) for w in _refine(comps[i], target.traces[i], o, n).words)

    candidates = []  # per piece: list of (shift, frozenset of cells)
    for (i, o, w) in pieces:
        o_win, n_win = windows[i]
        opts = []
        for s in shifts:
            img = _refine(comps[i], Trace(o - s, len(w), frozenset({w})), o_win, n_win)
            cov = frozenset((i, u) for u in img.words)
            if cov and cov <= cells:
                opts.append((s, cov))
        if not opts:
            return None
        candidates.append(opts)

    exact = mode == EQUIVALENCE
    choice = [None] * len(pieces)

    def solve(remaining: frozenset, used: frozenset) -> bool:
        if not remaining:
            return not exact or used == cells
        best, best_opts = None, None
        for k in sorted(remaining):
            opts = [(s, cov) for s, cov in candidates[k] if not (cov & used)]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = k, opts
                if not opts:
                    return False
        if exact:
            reachable = set(used)
            for k in remaining:
                for _, cov in candidates[k]:
                    if not (cov & used):
                        reachable |= cov
            if reachable != cells:
                return False
        for s, cov in best_opts:
            choice[best] = s
            if solve(remaining - {best}, used | cov):
                return True
        choice[best] = None
        return False

    if not solve(frozenset(range(len(pieces))), frozenset()):
        return None

    by_shift: dict[int, ClopenSet] = {}
    for (i, o, w), s in zip(pieces, choice):
        cyl = ClopenSet.cylinder(space, i, w, o)
        by_shift[s] = by_shift[s] | cyl if s in by_shift else cyl
    ordered = tuple((by_shift[s].coarsen(), s) for s in shifts if s in by_shift)
    result = HopfMap(source, target, ordered)
    check = verify(result, mode)
    if not check:
        raise AssertionError(f"search produced an invalid map: {check.clause}")
    return result


def search_embedding(source: ClopenSet, target: ClopenSet, shift_bound: int, level: int) -> HopfMap | None:
    """A finite Hopf map from ``source`` into ``target``, or ``None`` within bounds."""
    return _search(source, target, shift_bound, level, EMBEDDING)


def search_equivalence(source: ClopenSet, target: ClopenSet, shift_bound: int, level: int) -> HopfMap | None:
    """A finite Hopf equivalence from ``source`` onto ``target``, or ``None`` within bounds."""
    return _search(source, target, shift_bound, level, EQUIVALENCE)
