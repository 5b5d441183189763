"""Check records and deterministic JSON reports.

Every verification emits entries {"check", "value": [re, im], "tolerance",
"pass"}; reports sort entries by check name and contain no timestamps, so
identical configurations produce byte-identical files.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    value: complex
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        v = complex(self.value)
        return {
            "check": self.name,
            "value": [v.real, v.imag],
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
        }


@dataclass
class Report:
    command: str
    config: dict
    checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def add(self, name: str, value, tolerance: float, passed: bool | None = None) -> bool:
        value = complex(value)
        if passed is None:
            passed = abs(value) <= tolerance
        self.checks.append(Check(name, value, tolerance, bool(passed)))
        return bool(passed)

    def add_residual(self, name: str, residual: float, tolerance: float) -> bool:
        return self.add(name, complex(residual), tolerance)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        body = {
            "command": self.command,
            "config": self.config,
            "checks": sorted((c.to_dict() for c in self.checks), key=lambda d: d["check"]),
            "pass": self.all_passed,
        }
        if self.extras:
            body["extras"] = self.extras
        return body

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary(self, stream=sys.stderr):
        for c in sorted(self.checks, key=lambda c: c.name):
            status = "PASS" if c.passed else "FAIL"
            print(f"[{status}] {c.name}: |value| = {abs(c.value):.3e} "
                  f"(tol {c.tolerance:.1e})", file=stream)
        verdict = "OK" if self.all_passed else "FAILED"
        print(f"{self.command}: {len(self.checks)} checks, {verdict}", file=stream)
