from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

from arbor.cli import run
from arbor.hopf import HopfContext, antipode_series
from arbor.coefficients import Params
from arbor.lincomb import parse_lincomb
from arbor.trees import parse_key

GOLDEN = Path(__file__).parent / "golden"

EXAMPLES = {
    "coproduct_ck_ladder": ["coproduct", "--operad", "com", "--colors", "1", "--q1", "1", "--q2", "0", "[1:[]]"],
    "enumerate_count": ["enumerate", "--operad", "com", "--colors", "1", "--size", "4", "--count-only"],
    "check_coassoc": ["check", "--suite", "coassoc", "--operad", "com", "--colors", "2", "--symbolic", "--max-degree", "4"],
}


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "arbor", *argv], capture_output=True, text=True)


def test_golden_coproduct():
    code, out = run(EXAMPLES["coproduct_ck_ladder"])
    assert code == 0
    assert out == "1 (x) [1:[]] + [] (x) [] + [1:[]] (x) 1\n"
    assert out == (GOLDEN / "coproduct_ck_ladder.txt").read_text()


def test_golden_enumerate():
    code, out = run(EXAMPLES["enumerate_count"])
    assert (code, out) == (0, "4\n")
    assert out == (GOLDEN / "enumerate_count.txt").read_text()


def test_golden_check_coassoc():
    code, out = run(EXAMPLES["check_coassoc"])
    assert code == 0
    assert out == (GOLDEN / "check_coassoc.txt").read_text()


def test_subprocess_matches_in_process():
    for name, argv in EXAMPLES.items():
        p = cli(*argv)
        assert p.returncode == run(argv)[0]
        assert p.stdout == (GOLDEN / f"{name}.txt").read_text()


def test_determinism():
    argv = ["antipode", "--colors", "2", "[1:[] 2:[1:[]]]"]
    assert len({run(argv) for _ in range(3)}) == 1
    a, b = cli(*argv), cli(*argv)
    assert a.stdout == b.stdout and a.stdout


def test_failed_check_exits_one_with_witness():
    code, out = run(["check", "--suite", "prelie", "--colors", "1", "--max-degree", "4"])
    assert code == 1
    assert "witness:" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["coproduct", "--colors", "1", "[3:[]]"],
        ["coproduct", "--colors", "2", "--q1", "1", "[]"],
        ["coproduct", "--colors", "2", "--q1", "1,2,3", "--q2", "0,0", "[]"],
        ["coproduct", "--colors", "2", "--q1", "1,x", "--q2", "0,0", "[]"],
        ["coproduct", "--symbolic", "--q1", "1,1", "--q2", "0,0", "[]"],
        ["coproduct", "--operad", "k", "--colors", "2", "[]"],
        ["dendriform", "--k", "3", "(L,L)", "(L,L)"],
        ["prune", "(L,L,L)"],
        ["enumerate", "--size", "-1"],
        ["dual-star", "[]", "1"],
        ["nonsense"],
    ],
)
def test_usage_and_parse_errors_exit_two(argv):
    assert run(argv)[0] == 2


def test_parse_error_reports_position():
    p = cli("coproduct", "--colors", "1", "[1:[] 2:[]]")
    assert p.returncode == 2
    assert "position 6" in p.stderr and p.stdout == ""


def test_max_degree_env(monkeypatch):
    monkeypatch.setenv("ARBOR_MAX_DEGREE", "3")
    assert run(["enumerate", "--size", "4"])[0] == 2
    assert run(["coproduct", "[1:[1:[1:[]]]]"])[0] == 2
    assert run(["check", "--suite", "coassoc", "--max-degree", "4"])[0] == 2
    assert run(["enumerate", "--size", "3", "--count-only"]) == (0, "7\n")


def test_round_trip_between_subcommands():
    code, out = run(["antipode", "--colors", "2", "[1:[2:[]]]"])
    assert code == 0
    code2, out2 = run(["antipode", "--colors", "2", out.strip()])
    assert code2 == 0
    # S is an involution on a commutative Hopf algebra
    assert out2.strip() == "[1:[2:[]]]"
    ctx = HopfContext("unordered", 2, Params.symbolic_params(2))
    x = parse_lincomb(out.strip(), lambda t: parse_key(t, "unordered", 2), 4)
    assert str(antipode_series(x, ctx)) == "[1:[2:[]]]"


def test_coproduct_output_parses_back():
    code, out = run(["coproduct", "--colors", "2", "[1:[] 2:[]]"])
    x = parse_lincomb(out.strip(), lambda t: parse_key(t, "unordered", 2), 4)
    assert str(x) == out.strip()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["counit", "3 1 + 5 []"], "3\n"),
        (["dual-star", "--colors", "1", "--q1", "1", "--q2", "0", "[]", "[1:[]]"], "[1:[1:[]]] + 2 [1:[] 1:[]]\n"),
        (["bracket", "--colors", "1", "--q1", "1", "--q2", "0", "[]", "[1:[]]"], "2 [1:[] 1:[]]\n"),
        (["graft-star", "--colors", "1", "[]", "[1:[]]"], "[1:[1:[]]] + [1:[] 1:[]]\n"),
        (["prelie", "--colors", "2", "--colorset", "1", "[]", "[]"], "[1:[]]\n"),
        (["embed-prelie", "--colors", "2", "[]"], "[1|] + [2|]\n"),
        (["dendriform", "(L,L)", "(L,L)"], "((L,L),L) + (L,(L,L))\n"),
        (["dendriform", "--op", "left", "(L,L)", "(L,L)"], "(L,(L,L))\n"),
        (["lr-coproduct", "(L,L)"], "L (x) (L,L) + (L,L) (x) L\n"),
        (["prune", "(L,(L,L))"], "(L,L) (x) (L,L)\n"),
        (["prune", "(L,L)"], "0\n"),
        (["enumerate", "--operad", "k", "--colors", "2", "--size", "2"], "[1:[]]\n[2:[]]\n"),
        (["convolve-check", "--colors", "1", "[1:[1:[]]]"], None),
    ],
)
def test_subcommands(argv, expected):
    code, out = run(argv)
    assert code == 0
    if expected is not None:
        assert out == expected
