"""Verification reports shared by all check suites."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    id: str
    ref: str
    passed: bool
    witness: Any = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_obj(self) -> dict:
        out = {"id": self.id, "paper_ref": self.ref, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    runtime_ms: int = 0
    values: dict = field(default_factory=dict)
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, id: str, ref: str, passed: bool, witness=None, detail: str = "") -> Check:
        if not passed and witness is None:
            witness = "residual nonzero"
        c = Check(id, ref, bool(passed), witness, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.ref, c.passed, c.witness, c.detail))
        self.values.update(other.values)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def finish(self) -> "Report":
        self.runtime_ms = int((time.perf_counter() - self._t0) * 1000)
        return self

    def to_obj(self) -> dict:
        out = {"suite": self.suite, "status": "pass" if self.passed else "fail",
               "checks": [c.to_obj() for c in self.checks]}
        if self.values:
            out["values"] = {k: _jsonable(v) for k, v in sorted(self.values.items())}
        out["runtime_ms"] = self.runtime_ms
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2)

    def summary(self) -> str:
        lines = [f"{c.status.upper():4} {c.id}" + (f"  witness={c.witness}" if not c.passed else "")
                 for c in self.checks]
        lines.append(f"{self.suite}: {sum(c.passed for c in self.checks)}/{len(self.checks)} passed")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return str(x)
