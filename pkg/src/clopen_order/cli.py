"""Command line front end.

Exit codes: 0 decided, 1 nothing found within bounds (or UNKNOWN / STUCK),
2 invalid input.  ``--json`` switches to line-delimited JSON records.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebraic import to_decimal, to_exact
from .clopen import ClopenSet, NotationError
from .comparability import compare, find_incomparable, verify_total_comparability
from .config import ConfigError, resolve_system
from .group import (
    Decomposition,
    Membership,
    Outcome,
    check_pointed,
    check_total_order,
    classify_sign,
    lemma_three_check,
    nontotal_ratio,
    sign_procedure,
    witness_nontotal,
)
from .hopf import EMBEDDING, EQUIVALENCE, HopfMap, measure_obstruction, search_embedding, search_equivalence, verify

DIGITS = 12


class InputError(Exception):
    pass


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def record(self, rec: dict, human: str | None = None) -> None:
        if self.as_json:
            self.stream.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            self.stream.write((human if human is not None else _flatten(rec)) + "\n")


def _flatten(rec, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in rec.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_flatten(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_flatten(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    out += [fmt.format(*map(str, r)) for r in rows]
    return "\n".join(out)


def _load(args):
    try:
        cfg = resolve_system(args.system)
        return cfg, cfg.build()
    except ConfigError as exc:
        raise InputError(str(exc)) from None


def _set(space, text):
    try:
        return ClopenSet.parse(space, text)
    except NotationError as exc:
        raise InputError(f"bad set {text!r}: {exc}") from None


def _bound(args, cfg, name):
    v = getattr(args, name, None)
    return cfg.bounds[name] if v is None else v


# -- commands ---------------------------------------------------------------------

def cmd_measures(args, out: Output) -> int:
    cfg, space = _load(args)
    n = args.block_len
    if n < 0:
        raise InputError("--block-len must be nonnegative")
    rows = []
    for i, comp in enumerate(space.components):
        for w, f in comp.word_frequencies(n).items():
            rec = {"component": i, "word": w, "exact": to_exact(f), "decimal": to_decimal(f, DIGITS)}
            if out.as_json:
                out.record(rec)
            rows.append([i, w or "*", rec["exact"], rec["decimal"]])
    if not out.as_json:
        out.record({}, _table(rows, ["comp", "word", "exact", "decimal"]))
    return 0


def _verdict_human(a, b, v) -> str:
    left = ", ".join(v.left.decimals(DIGITS))
    right = ", ".join(v.right.decimals(DIGITS))
    return (
        f"{v.kind.value}\n  A = {a.to_notation()}  mu = ({left})\n"
        f"  B = {b.to_notation()}  mu = ({right})\n  signs = {list(v.signs)}"
    )


def cmd_compare(args, out: Output) -> int:
    cfg, space = _load(args)
    a, b = _set(space, args.set_a), _set(space, args.set_b)
    v = compare(a, b)
    rec = {"a": a.to_notation(), "b": b.to_notation(), **v.record(DIGITS)}
    out.record(rec, _verdict_human(a, b, v))
    return 0


def cmd_find_incomparable(args, out: Output) -> int:
    cfg, space = _load(args)
    L = _bound(args, cfg, "max_len")
    pair = find_incomparable(space, L, args.max_union)
    if pair is None:
        out.record({"result": "none within bounds", "max_len": L}, "none within bounds")
        return 1
    rec = {"result": "found", "a": pair.a.to_notation(), "b": pair.b.to_notation(), **pair.verdict.record(DIGITS)}
    out.record(rec, _verdict_human(pair.a, pair.b, pair.verdict))
    return 0


def cmd_total_order(args, out: Output) -> int:
    cfg, space = _load(args)
    rep = check_total_order(space, _bound(args, cfg, "coeff"), _bound(args, cfg, "max_len"))
    out.record(rep.record())
    return 0


def cmd_total_comparability(args, out: Output) -> int:
    cfg, space = _load(args)
    rep = verify_total_comparability(space, _bound(args, cfg, "max_len"), cfg.bounds["budget"])
    out.record(rep.record())
    return 0


def cmd_sign_procedure(args, out: Output) -> int:
    cfg, space = _load(args)
    pos = [_set(space, s) for s in args.pos or []]
    neg = [_set(space, s) for s in args.neg or []]
    try:
        d = Decomposition(pos, neg)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = sign_procedure(d, _bound(args, cfg, "level"))
    rec = res.record()
    rec["classify_sign"] = classify_sign(d.element()).value
    out.record(rec)
    return 1 if res.outcome is Outcome.STUCK else 0


def cmd_witness_nontotal(args, out: Output) -> int:
    cfg, space = _load(args)
    a = _set(space, args.set_a)
    try:
        ratio, hi, lo = nontotal_ratio(a)
        g = witness_nontotal(a)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rec = {"set": a.to_notation(), "ratio": str(ratio), "high_measure": hi, "low_measure": lo,
           "sign": classify_sign(g).value, "element": g.record(DIGITS)}
    out.record(rec)
    return 0


def cmd_hopf(args, out: Output) -> int:
    cfg, space = _load(args)
    mode = EMBEDDING if args.mode == "embed" else EQUIVALENCE
    if args.map:
        try:
            m = HopfMap.from_record(space, json.loads(args.map))
        except (ValueError, KeyError, TypeError, NotationError) as exc:
            raise InputError(f"bad map: {exc}") from None
        res = verify(m, mode)
        out.record({"map": m.record(), "mode": mode, "verify": res.record()})
        return 0 if res.ok else 1
    b, a = _set(space, args.set_b), _set(space, args.set_a)
    N, L = _bound(args, cfg, "shift"), _bound(args, cfg, "level")
    search = search_embedding if mode == EMBEDDING else search_equivalence
    m = search(b, a, N, L)
    if m is None:
        reason = measure_obstruction(b, a, mode) or "none within bounds"
        out.record({"result": "none", "mode": mode, "reason": reason, "shift": N, "level": L})
        return 1
    out.record({"result": "found", "mode": mode, "map": m.record(), "verify": verify(m, mode).record()})
    return 0


def cmd_lemma_three(args, out: Output) -> int:
    cfg, space = _load(args)
    a, b = _set(space, args.set_a), _set(space, args.set_b)
    try:
        rep = lemma_three_check(a, b, _bound(args, cfg, "level"))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.record(rep.record())
    decided = rep.forward.status is not Membership.UNKNOWN or (
        rep.reverse is not None and rep.reverse.status is Membership.YES
    )
    return 0 if rep.consistent and decided else 1


def _selftest_checks(space, cfg):
    L = max(1, min(cfg.bounds["max_len"], 3))
    for i, comp in enumerate(space.components):
        for n in range(0, L + 2):
            freqs = comp.word_frequencies(n)
            total = sum(freqs.values(), 0)
            yield f"comp {i}: frequencies at length {n} sum to 1", total == 1
            yield f"comp {i}: frequencies at length {n} positive", all(f.sign() == 1 for f in freqs.values())
            if n == 0:
                continue
            nxt = comp.word_frequencies(n + 1)
            ok = all(
                freqs[w] == sum((nxt[u] for u in nxt if u[:-1] == w), 0)
                and freqs[w] == sum((nxt[u] for u in nxt if u[1:] == w), 0)
                for w in freqs
            )
            yield f"comp {i}: Kolmogorov consistency {n} -> {n + 1}", ok
    full = ClopenSet.full(space)
    yield "full set has all-one measure", all(x == 1 for x in full.measure_vector())
    for i, comp in enumerate(space.components):
        w = comp.language(min(2, L))[0]
        a = ClopenSet.cylinder(space, i, w)
        yield f"comp {i}: complement measure", (~a).measure_vector() == full.measure_vector() - a.measure_vector()
        yield f"comp {i}: shift invariance", all(a.shift_image(k).measure_vector() == a.measure_vector() for k in range(-3, 4))
    pointed = check_pointed(space, samples=100)
    yield "cone pointedness (100 samples)", pointed.violations == 0
    rep = verify_total_comparability(space, 1, cfg.bounds["budget"])
    yield "comparability matches ergodic count", (rep.incomparable == 0) == space.is_uniquely_ergodic


def cmd_selftest(args, out: Output) -> int:
    cfg, space = _load(args)
    failures = 0
    rows = []
    for name, ok in _selftest_checks(space, cfg):
        failures += not ok
        if out.as_json:
            out.record({"check": name, "ok": bool(ok)})
        rows.append([("PASS" if ok else "FAIL"), name])
    if not out.as_json:
        out.record({}, _table(rows, ["result", "check"]))
    return 1 if failures else 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")

    p = argparse.ArgumentParser(prog="clopen-order", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("system", help="config file path or bundled system name")
        sp.set_defaults(func=func)
        return sp

    sp = add("measures", cmd_measures, "exact cylinder frequencies")
    sp.add_argument("--block-len", type=int, default=1)

    sp = add("compare", cmd_compare, "decide A >= B")
    sp.add_argument("set_a")
    sp.add_argument("set_b")

    sp = add("find-incomparable", cmd_find_incomparable, "search for an incomparable pair")
    sp.add_argument("--max-len", dest="max_len", type=int)
    sp.add_argument("--max-union", type=int, default=2)

    sp = add("total-order", cmd_total_order, "search for an element of mixed sign")
    sp.add_argument("--coeff", type=int)
    sp.add_argument("--max-len", dest="max_len", type=int)

    sp = add("total-comparability", cmd_total_comparability, "compare all word-subset sets pairwise")
    sp.add_argument("--max-len", dest="max_len", type=int)

    sp = add("sign-procedure", cmd_sign_procedure, "run the step-by-step sign decision")
    sp.add_argument("--pos", nargs="*", default=[])
    sp.add_argument("--neg", nargs="*", default=[])
    sp.add_argument("--level", type=int)

    sp = add("witness-nontotal", cmd_witness_nontotal, "mixed-sign element m[A] - n[X]")
    sp.add_argument("set_a")

    sp = add("hopf", cmd_hopf, "search or verify a finite Hopf map from B into/onto A")
    sp.add_argument("set_b", nargs="?", default="0:0:")
    sp.add_argument("set_a", nargs="?", default="0:0:")
    sp.add_argument("--mode", choices=["embed", "equiv"], default="equiv")
    sp.add_argument("--shift", type=int)
    sp.add_argument("--level", type=int)
    sp.add_argument("--map", help="JSON map record to verify instead of searching")

    sp = add("lemma-three", cmd_lemma_three, "check A >= B against clopen-class membership")
    sp.add_argument("set_a")
    sp.add_argument("set_b")
    sp.add_argument("--level", type=int)

    add("selftest", cmd_selftest, "run invariant checks on a system")
    return p


def main(argv=None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json, stream)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
