import csv
import io
import json
import subprocess
import sys

import pytest

from gaussdio.cli import EXIT_USAGE, dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--elements", "1,3,120")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "pass"
    assert data["reports"][0]["claim_id"]


def test_verify_fail_is_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--elements", "1,3,7")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


@pytest.mark.parametrize("argv", [
    ["bogus-cmd"],
    ["verify"],
    ["verify", "--elements", "1,,3"],
    ["verify", "--elements", "1,x"],
    ["family", "--k", "2", "--precision-bits", "0"],
    ["pell", "intersect", "--k", "2"],
    ["analytic", "linform", "--k", "20", "--m", "2"],
    ["paper-suite", "--only", "a,b"],
    ["family", "--k", "1"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert "error" in err


def test_bad_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("GAUSSDIO_PRECISION_BITS", "lots")
    assert run(capsys, "family", "--k", "20")[0] == EXIT_USAGE


def test_env_precision_applies(capsys, monkeypatch):
    monkeypatch.setenv("GAUSSDIO_PRECISION_BITS", "200")
    code, out, _ = run(capsys, "analytic", "jz", "--k", "100", "--variant", "system2")
    assert code == 0
    # the flag wins over the environment
    code, out2, _ = run(capsys, "analytic", "jz", "--k", "100", "--variant", "system2",
                        "--precision-bits", "128")
    assert code == 0 and out != out2


def test_csv_escaping_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--elements", "1,3,7", "--format", "csv")
    assert code == 1
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["claim_id", "verdict", "description", "inputs", "witnesses"]
    for row in rows[1:]:
        assert len(row) == 5
        json.loads(row[3]), json.loads(row[4])


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--elements", "1,3,120", "--format", "text")
    assert code == 0
    assert out.strip().splitlines()[-1] == "overall: pass"


def test_output_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "family", "--k", "2+i", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["verdict"] == "pass"


def test_output_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "family", "--k", "2", "--output", str(tmp_path / "no" / "x.json"))
    assert code == 1 and "error writing" in err


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "text", "family", "--k", "3")
    assert code == 0 and out.startswith("[")


def test_timing_excluded_by_default(capsys):
    _, out, _ = run(capsys, "family", "--k", "3")
    assert "timing" not in out
    _, out, _ = run(capsys, "family", "--k", "3", "--timing")
    assert "timing" in out


@pytest.mark.parametrize("argv", [
    ["lemmas", "bkroza", "--max", "30"],
    ["lemmas", "ckroza-scan", "--max", "20"],
    ["paper-suite", "--only", "1,4"],
])
def test_jobs_determinism(capsys, argv):
    c1, o1, _ = run(capsys, *argv, "--jobs", "1")
    c8, o8, _ = run(capsys, *argv, "--jobs", "8")
    assert c1 == c8 == 0
    assert o1 == o8


def test_json_round_trip_of_gaussian_values(capsys):
    code, out, _ = run(capsys, "search", "--k", "2", "--index-bound", "4")
    assert code == 0
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data


def test_subcommands_smoke(capsys):
    for argv in (["pell", "fundamental", "--k", "20"],
                 ["pell", "intersect", "--k", "20", "--n-max", "6", "--m-max", "6"],
                 ["sieve", "candidates", "--k", "20"],
                 ["sieve", "profiles", "--k", "20", "--max-index", "20"],
                 ["analytic", "bw"],
                 ["analytic", "heights", "--k", "3+4i"],
                 ["lemmas", "ckroza-cases"]):
        assert run(capsys, *argv)[0] == 0, argv
    # the log bound is honestly false at k = 20, m = n = 3
    assert run(capsys, "analytic", "linform", "--k", "20")[0] == 1


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "gaussdio.cli", "verify", "--elements", "1,3,120"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"] == "pass"
