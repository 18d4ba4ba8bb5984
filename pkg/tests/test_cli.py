import subprocess
import sys

import pytest

from gradering.cli import run
from gradering.corpus import load_document, parse_report


def test_demo_ex341():
    code, out = run(["demo", "--example", "ex3.4.1", "--modulus", "5"])
    assert code == 0 and "expectations pass" in out


def test_validate_verbatim_erratum():
    code, out = run(["validate", "ex3.8-verbatim.ring.json"])
    assert code == 1 and "(E12, E21)" in out
    code, out = run(["--json", "validate", "ex3.8-verbatim.ring.json"])
    rep = parse_report(out)
    assert rep.exit_code == 1 and rep.payload["grading_witness"] == [1, 2, [0]]


def test_verify_ex43():
    code, out = run(["verify", "ex4.3", "--theorem", "4.1", "--sign", "minus"])
    assert code == 0
    assert "hypotheses unsatisfied (not gr-prime" in out
    assert out.rstrip().endswith("conclusion fails; consistent")


@pytest.mark.parametrize("argv, code", [
    (["validate", "ex3.4.1"], 0),
    (["classify", "ex3.6", "--map", "F"], 0),
    (["grprime", "grprime-not-prime"], 0),
    (["prime", "grprime-not-prime"], 1),
    (["grprime", "ex4.3"], 1),
    (["center", "ex3.4.1"], 0),
    (["verify", "ex4.3", "--theorem", "4.2", "--sign", "plus"], 0),
    (["verify", "ex3.8-corrected", "--theorem", "lemma-2.1"], 0),
    (["verify", "ex4.3", "--theorem", "lemma-2.1"], 2),
    (["verify", "ex3.4.1", "--theorem", "prop-F-nonzero"], 0),
    (["verify", "rem2.3.1", "--theorem", "prop-restriction", "--map", "D1"], 0),
    (["sweep", "--family", "group-algebra", "--params", "primes=3", "max_order=2",
      "--theorem", "4.1"], 0),
    (["search", "--problem", "pr1.i", "--bounds", "families=group-algebra", "primes=3"], 0),
    (["demo", "--example", "ex3.8", "--modulus", "5"], 0),
])
def test_json_output_round_trips(argv, code):
    got, text = run(argv + ["--json"])
    assert got == code
    rep = parse_report(text)
    assert rep.command == argv[0] and rep.exit_code == code
    got2, text2 = run(argv + ["--json"])
    assert text2 == text


@pytest.mark.parametrize("argv", [
    ["validate", "no-such-file"],
    ["classify", "ex3.8-verbatim", "--map", "F"],
    ["classify", "ex3.4.1", "--map", "nope"],
    ["demo", "--example", "ex3.6", "--modulus", "3"],
    ["sweep", "--family", "bogus", "--theorem", "4.1"],
    ["sweep", "--family", "group-algebra", "--params", "primes", "--theorem", "4.1"],
    ["verify", "ex3.4.1", "--theorem", "9.9"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_budget_exhaustion_exits_3(monkeypatch):
    monkeypatch.setenv("GRADERING_BUDGET", "10")
    code, out = run(["prime", "ex3.4.1"])
    assert code == 3 and "undecided" in out
    code, out = run(["--json", "grprime", "ex4.3"])
    assert code == 3 and parse_report(out).exit_code == 3


def test_budget_flag():
    assert run(["prime", "ex3.4.1", "--budget", "5"])[0] == 3


def test_sweep_jobs_do_not_change_bytes():
    base = ["sweep", "--family", "matrix-pattern,group-algebra", "--params", "primes=2,3",
            "max_n=2", "max_order=4", "--theorem", "prop-restriction", "--json"]
    _, one = run(base + ["--jobs", "1"])
    _, two = run(base + ["--jobs", "2"])
    assert one == two


def test_demo_write(tmp_path):
    target = tmp_path / "ex3.6.ring.json"
    code, _ = run(["demo", "--example", "ex3.6", "--write", str(target)])
    assert code == 0
    doc = load_document(target)
    assert run(["classify", str(target), "--map", "F"])[0] == 0
    assert "F" in doc.maps


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gradering", "validate", "ex3.2.2"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "(E12, E23)" in proc.stdout
