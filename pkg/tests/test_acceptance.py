"""Acceptance battery: criteria 1-11 from one paper-suite run, 12 from a second.

Each test prints one line "criterion N: PASS|FAIL <claim id>".  Run
``python tests/test_acceptance.py`` for the lines alone.
"""

import json
import sys

import pytest

from gaussdio.cli import dispatch
from gaussdio.suite import CRITERIA

NUMBERS = [c.number for c in CRITERIA]


def _suite_bytes(tmp_path_factory, jobs):
    path = tmp_path_factory.mktemp(f"suite{jobs}") / "suite.json"
    code = dispatch(["paper-suite", "--jobs", str(jobs), "--output", str(path)])
    return code, path.read_bytes()


@pytest.fixture(scope="module")
def serial_run(tmp_path_factory):
    code, raw = _suite_bytes(tmp_path_factory, 1)
    reports = {r["claim_id"]: r for r in json.loads(raw)["reports"]}
    return code, raw, reports


def _line(n, ok, claim):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} {claim}"


@pytest.mark.parametrize("number", NUMBERS)
def test_criterion(serial_run, number, capsys):
    crit = next(c for c in CRITERIA if c.number == number)
    report = serial_run[2][crit.claim_id]
    ok = report["verdict"] == "pass"
    with capsys.disabled():
        print("\n" + _line(number, ok, crit.claim_id))
    assert ok, json.dumps(report["witnesses"], indent=1)[:4000]


def test_criterion_12_determinism(serial_run, tmp_path_factory, capsys):
    code4, raw4 = _suite_bytes(tmp_path_factory, 4)
    ok = raw4 == serial_run[1] and code4 == serial_run[0]
    with capsys.disabled():
        print("\n" + _line(12, ok, "acceptance-determinism"))
    assert ok


def main() -> int:
    import tempfile
    from pathlib import Path

    outs = {}
    with tempfile.TemporaryDirectory() as d:
        for jobs in (1, 4):
            p = Path(d) / f"s{jobs}.json"
            dispatch(["paper-suite", "--jobs", str(jobs), "--output", str(p)])
            outs[jobs] = p.read_bytes()
    reports = {r["claim_id"]: r for r in json.loads(outs[1])["reports"]}
    all_ok = True
    for c in CRITERIA:
        ok = reports[c.claim_id]["verdict"] == "pass"
        all_ok &= ok
        print(_line(c.number, ok, c.claim_id))
    ok = outs[1] == outs[4]
    print(_line(12, ok, "acceptance-determinism"))
    return 0 if all_ok and ok else 1


if __name__ == "__main__":
    sys.exit(main())
