import json
import shutil
import subprocess
import sys

import pytest

from arithmos.anchors import RULES
from arithmos.cli import main

UNKNOWN_PI_E = ("UNKNOWN (rational, algebraic-irrational, or transcendental); "
                "related fact: at least 1 of {pi+e, pi*e} transcendental")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_text(capsys):
    assert run(capsys, "classify", "2^sqrt(2)")[:2] == (0, "TRANSCENDENTAL\n")
    assert run(capsys, "classify", "atan(1)/pi")[1] == "RATIONAL (1/4)\n"
    assert run(capsys, "classify", "sqrt(2)+sqrt(3)")[1].startswith("ALGEBRAIC IRRATIONAL (minimal polynomial x^4 - 10*x^2 + 1")
    assert run(capsys, "classify", "acos(1/3)/pi")[1].startswith("RATIONAL OR TRANSCENDENTAL")


def test_unknown_with_related_fact(capsys):
    code, out, _ = run(capsys, "classify", "pi+e")
    assert code == 0 and out == UNKNOWN_PI_E + "\n"


def test_classify_json(capsys):
    code, out, err = run(capsys, "classify", "e^pi", "--json", "--explain")
    rec = json.loads(out)
    assert code == 0 and err == ""
    assert rec["verdict"]["natures"] == ["TRANS"] and rec["certificate"]["rule"] == "R-BAKER-EXP"


def test_explain_text(capsys):
    code, out, _ = run(capsys, "classify", "2^sqrt(2)", "--explain")
    assert "R-GS (Gelfond–Schneider)" in out and out.count("\n") == 4


@pytest.mark.parametrize("argv, code", [
    (["classify", "2^sqrt(2)"], 0),
    (["classify", "pi+e"], 0),
    (["classify", "2+"], 1),
    (["classify", "foo(2)"], 1),
    (["classify", "1.5"], 1),
    (["classify", ""], 1),
    (["classify", "ln(0)"], 2),
    (["classify", "1/0"], 2),
    (["classify", "tan(pi/2)"], 2),
    (["classify", "0^(-1)"], 2),
    (["batch", "/nonexistent/file.txt"], 1),
    (["rules"], 0),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "classify", "2+", "--json")
    assert code == 1 and out == "" and "offset 2" in err


def test_batch_json_lines(capsys, tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("# comment\npi+e\n\npi*e\nln(pi)\nfoo(1)\n1/0\n2^sqrt(2)\n", encoding="utf-8")
    code, out, _ = run(capsys, "batch", str(f), "--json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    verdicts = [r for r in recs if r["type"] == "verdict"]
    errors = [r for r in recs if r["type"] == "error"]
    disj = [r for r in recs if r["type"] == "disjunctive"]
    assert [r["input"] for r in verdicts] == ["pi+e", "pi*e", "ln(pi)", "2^sqrt(2)"]
    assert [(r["line"], r["error"]) for r in errors] == [(6, "parse"), (7, "domain")]
    assert {(r["rule"], r["at_least"]) for r in disj} >= {("R-SUMPROD", 1), ("R-1OF3", 2)}


def test_rules_listing(capsys):
    code, out, _ = run(capsys, "rules")
    assert "R-GS — Lemma 3 — any value of α^β is transcendental" in out
    assert sum(1 for line in out.splitlines() if " — " in line and not line.startswith(" ")) == len(RULES)
    code, out, _ = run(capsys, "rules", "--json")
    assert len(out.splitlines()) == len(RULES)


def test_option_validation(capsys):
    with pytest.raises(SystemExit):
        main(["classify", "pi", "--max-degree", "1"])
    with pytest.raises(SystemExit):
        main(["classify", "pi", "--precision", "70000"])
    assert main(["classify", "pi", "--precision", "256", "--max-degree", "2"]) == 0


@pytest.mark.skipif(shutil.which("arithmos") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["arithmos", "classify", "pi+e"], capture_output=True, text=True, encoding="utf-8")
    assert p.returncode == 0 and p.stdout.strip() == UNKNOWN_PI_E


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "arithmos.cli", "classify", "ln(0)"], capture_output=True, text=True)
    assert p.returncode == 2 and p.stdout == ""
