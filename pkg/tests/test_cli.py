import io
import json
import subprocess
import sys

import pytest

from clopen_order.algebraic import from_exact, to_decimal
from clopen_order.cli import main
from clopen_order.config import ConfigError, bundled_systems, parse_config, resolve_system


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, [json.loads(line) for line in text.splitlines()]


def test_bundled_systems():
    assert {"fib", "tm", "fib_tm_union", "tm_tm_union", "tribonacci"} <= set(bundled_systems())


def test_measures_tm_block_two():
    code, recs = run_json("measures", "tm", "--block-len", "2")
    assert code == 0
    assert {r["word"]: r["exact"] for r in recs} == {"aa": "1/6", "ab": "1/3", "ba": "1/3", "bb": "1/6"}
    code, text = run("measures", "tm", "--block-len", "2")
    assert "0.166666666667" in text and "1/3" in text


def test_compare_commands():
    code, [rec] = run_json("compare", "tm", "0:0:ab", "0:0:aa")
    assert code == 0 and rec["kind"] == "GEQ_STRICT"
    code, [rec] = run_json("compare", "fib_tm_union", "0:0:*", "1:0:*")
    assert rec["kind"] == "INCOMPARABLE" and rec["signs"] == [1, -1]
    code, text = run("compare", "fib_tm_union", "0:0:*", "1:0:*")
    assert text.startswith("INCOMPARABLE")


def test_find_incomparable_exit_codes():
    code, [rec] = run_json("find-incomparable", "fib_tm_union", "--max-len", "1")
    assert code == 0 and 1 in rec["signs"] and -1 in rec["signs"]
    code, [rec] = run_json("find-incomparable", "tm", "--max-len", "2")
    assert code == 1 and rec["result"] == "none within bounds"


def test_total_order():
    code, [rec] = run_json("total-order", "fib", "--coeff", "3", "--max-len", "2")
    assert code == 0 and rec["total"] is True
    code, [rec] = run_json("total-order", "fib_tm_union", "--coeff", "3", "--max-len", "2")
    assert rec["total"] is False and rec["witness"]["integral"]["exact"] == ["1", "-1"]


def test_total_comparability():
    code, [rec] = run_json("total-comparability", "fib", "--max-len", "3")
    assert code == 0 and rec["pairs"] == 120 and rec["incomparable"] == 0


def test_sign_procedure():
    code, [rec] = run_json("sign-procedure", "fib", "--pos", "0:0:*", "--neg", "0:0:a", "--level", "6")
    assert code == 0 and rec["outcome"] == "POSITIVE" and rec["steps"][0]["witness"] == "0:0:b"
    code, [rec] = run_json("sign-procedure", "fib_tm_union", "--pos", "0:0:*", "--neg", "1:0:*")
    assert code == 1 and rec["outcome"] == "STUCK"
    code, _ = run_json("sign-procedure", "fib", "--pos", "0:0:")
    assert code == 2


def test_witness_nontotal():
    code, [rec] = run_json("witness-nontotal", "fib_tm_union", "0:0:*")
    assert code == 0 and rec["ratio"] == "1/2" and rec["sign"] == "NEITHER"
    assert rec["element"]["integral"]["exact"] == ["1", "-1"]
    code, _ = run_json("witness-nontotal", "fib", "0:0:a")
    assert code == 2


def test_hopf_search_and_verify_round_trip():
    code, [rec] = run_json("hopf", "tm", "0:0:ba", "0:0:ab", "--mode", "equiv", "--shift", "2", "--level", "4")
    assert code == 0 and rec["verify"]["ok"]
    code, [again] = run_json("hopf", "tm", "--map", json.dumps(rec["map"]), "--mode", "equiv")
    assert code == 0 and again["verify"]["ok"] and again["map"] == rec["map"]
    bad = dict(rec["map"], pieces=rec["map"]["pieces"][:1])
    code, [r] = run_json("hopf", "tm", "--map", json.dumps(bad))
    assert code == 1 and r["verify"]["clause"] == "pieces cover source"
    code, [r] = run_json("hopf", "tm", "0:0:ab", "0:0:aa", "--mode", "embed")
    assert code == 1 and "outweighs" in r["reason"]
    code, _ = run_json("hopf", "tm", "--map", "{not json")
    assert code == 2


def test_lemma_three():
    code, [rec] = run_json("lemma-three", "fib", "0:0:*", "0:0:a", "--level", "4")
    assert code == 0 and rec["forward"]["witness"] == "0:0:b"
    code, [rec] = run_json("lemma-three", "tm", "0:0:aa", "0:0:ab", "--level", "4")
    assert rec["verdict"]["kind"] == "LEQ_STRICT" and rec["reverse"]["status"] == "YES"
    code, _ = run_json("lemma-three", "fib_tm_union", "0:0:*", "1:0:*")
    assert code == 2


@pytest.mark.parametrize("system", ["fib", "tm", "fib_tm_union", "tm_tm_union"])
def test_selftest(system):
    code, recs = run_json("selftest", system)
    assert code == 0 and all(r["ok"] for r in recs)


@pytest.mark.parametrize(
    "argv",
    [
        ["compare", "tm", "0:0:aaa", "0:0:a"],
        ["compare", "nosuchsystem", "0:0:a", "0:0:a"],
        ["measures", "tm", "--block-len", "-1"],
        ["compare", "tm", "7:0:a", "0:0:a"],
    ],
)
def test_invalid_input_exit_code(argv):
    assert run(*argv)[0] == 2


def test_exact_fields_round_trip():
    code, recs = run_json("measures", "fib", "--block-len", "3")
    for r in recs:
        v = from_exact(r["exact"])
        assert to_decimal(v, 12) == r["decimal"]
    code, [rec] = run_json("compare", "fib", "0:0:a", "0:0:b")
    for side in ("left", "right"):
        for e, d in zip(rec[side]["exact"], rec[side]["decimal"]):
            assert to_decimal(from_exact(e), 12) == d


def test_set_notation_round_trip_through_cli():
    code, [rec] = run_json("compare", "fib_tm_union", "~0:0:a+1:-1:ab|ba", "0:0:")
    code2, [rec2] = run_json("compare", "fib_tm_union", rec["a"], rec["b"])
    assert rec == rec2


COMMANDS = [
    ["measures", "fib", "--block-len", "3"],
    ["compare", "tm", "0:0:ab", "0:0:aa"],
    ["find-incomparable", "fib_tm_union", "--max-len", "1"],
    ["total-order", "tm_tm_union"],
    ["sign-procedure", "fib", "--pos", "0:0:*", "0:0:ab", "--neg", "0:0:a", "0:0:b"],
    ["witness-nontotal", "fib_tm_union", "0:0:*"],
    ["hopf", "tm", "0:0:ba", "0:0:ab", "--shift", "2", "--level", "4"],
    ["lemma-three", "tm", "0:0:ab", "0:0:aa"],
    ["selftest", "fib"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_byte_identical_output(argv):
    first = run(*argv, "--json")
    second = run(*argv, "--json")
    assert first == second


def test_subprocess_entry_point():
    args = [sys.executable, "-m", "clopen_order", "compare", "tm", "0:0:ab", "0:0:aa", "--json"]
    a = subprocess.run(args, capture_output=True, check=True)
    b = subprocess.run(args, capture_output=True, check=True)
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["kind"] == "GEQ_STRICT"


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("CLOPEN_ORDER_BUDGET", "10")
    assert resolve_system("tm").bounds["budget"] == 10
    code, [rec] = run_json("total-comparability", "tm", "--max-len", "3")
    assert rec["capped"] and rec["sets"] <= 10
    monkeypatch.setenv("CLOPEN_ORDER_BUDGET", "lots")
    assert run("total-comparability", "tm")[0] == 2


def test_config_file(tmp_path):
    path = tmp_path / "pair.cfg"
    path.write_text("[component:fib]\na = ab\nb = a\n\n[system]\nunion = fib, fib\n\n[bounds]\nmax_len = 1\n")
    code, [rec] = run_json("find-incomparable", str(path))
    assert code == 0 and rec["a"] == "0:0:a"
    cfg = resolve_system(str(path))
    assert [c.name for c in cfg.build().components] == ["fib", "fib#2"]


@pytest.mark.parametrize(
    "text",
    [
        "[system]\nunion = x\n",
        "[component:x]\na = ab\nb = a\n[system]\nunion = y\n",
        "[component:x]\na = ab\nb = ba\nc = cd\nd = dc\n",
        "[component:x]\na = ac\nb = a\n",
        "[component:x]\na = ab\nb = a\n[bounds]\nmax_len = two\n",
        "not an ini file",
    ],
)
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text, "bad").build()


def test_allow_nonprimitive_message():
    text = "[component:x]\na = ab\nb = ba\nc = cd\nd = dc\n[system]\nallow_nonprimitive = yes\n"
    with pytest.raises(ConfigError, match="only primitive"):
        parse_config(text).build()
