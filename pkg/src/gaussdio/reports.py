"""Structured verdicts shared by every checker and serialized by the CLI."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import mpmath

from .gint import GaussianInt
from .highprec import HighPrecComplex, HighPrecReal

PASS = "pass"
FAIL = "fail"
UNDECIDED = "undecided"
VERDICTS = (PASS, FAIL, UNDECIDED)


def verdict_of(flag: bool | None) -> str:
    if flag is None:
        return UNDECIDED
    return PASS if flag else FAIL


def combine(verdicts: Iterable[str]) -> str:
    """Worst verdict wins: any fail, then any undecided, else pass."""
    vs = list(verdicts)
    if FAIL in vs:
        return FAIL
    if UNDECIDED in vs:
        return UNDECIDED
    return PASS


@dataclass
class Report:
    claim_id: str
    description: str
    inputs: dict = field(default_factory=dict)
    verdict: str = PASS
    witnesses: Any = None
    timing: float | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "claim_id": self.claim_id,
            "description": self.description,
            "inputs": jsonable(self.inputs),
            "verdict": self.verdict,
            "witnesses": jsonable(self.witnesses),
        }
        if include_timing and self.timing is not None:
            out["timing"] = round(self.timing, 6)
        return out


def jsonable(obj):
    """Convert nested results into JSON-safe values with exact integers kept as strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        # big integers would lose precision in most JSON readers
        return obj if abs(obj) < 2**53 else str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, GaussianInt):
        return obj.to_json()
    if isinstance(obj, (HighPrecReal,)):
        return obj.to_json()
    if isinstance(obj, HighPrecComplex):
        return {"re": HighPrecReal(obj.re, obj.prec).to_json(),
                "im": HighPrecReal(obj.im, obj.prec).to_json()}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, 20)
    if isinstance(obj, Report):
        return obj.to_json()
    if hasattr(obj, "to_json"):
        # to_json may still hold exact values such as GaussianInt
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda x: json.dumps(x, sort_keys=True))
        return items
    return str(obj)


def overall_exit_code(reports: Iterable[Report]) -> int:
    """0 all pass, 1 any fail, 3 undecided without failures."""
    v = combine(r.verdict for r in reports)
    return {PASS: 0, FAIL: 1, UNDECIDED: 3}[v]


def render(reports: list[Report], fmt: str = "json", include_timing: bool = False) -> str:
    if fmt == "json":
        payload = {"reports": [r.to_json(include_timing) for r in reports],
                   "verdict": combine(r.verdict for r in reports)}
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["claim_id", "verdict", "description", "inputs", "witnesses"]
        if include_timing:
            header.append("timing")
        w.writerow(header)
        for r in reports:
            d = r.to_json(include_timing)
            row = [d["claim_id"], d["verdict"], d["description"],
                   json.dumps(d["inputs"], sort_keys=True),
                   json.dumps(d["witnesses"], sort_keys=True)]
            if include_timing:
                row.append(d.get("timing", ""))
            w.writerow(row)
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for r in reports:
            line = f"[{r.verdict.upper():9}] {r.claim_id}: {r.description}"
            if include_timing and r.timing is not None:
                line += f" ({r.timing:.3f}s)"
            lines.append(line)
        lines.append(f"overall: {combine(r.verdict for r in reports)}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
