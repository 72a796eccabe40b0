"""Named residual checks with tolerances and JSON/tabular rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "gks-report/1"


@dataclass
class Check:
    name: str
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


@dataclass
class Report:
    """A verification run: named checks plus sampling metadata."""

    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, name: str, max_residual: float, tolerance: float) -> Check:
        check = Check(name, float(max_residual), float(tolerance))
        self.checks.append(check)
        return check

    def merge(self, other: "Report", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(Check(prefix + check.name, check.max_residual,
                                     check.tolerance))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def override_tolerances(self, overrides: dict[str, float]) -> None:
        for check in self.checks:
            if check.name in overrides:
                check.tolerance = float(overrides[check.name])

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
        if self.extra:
            out["result"] = self.extra
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def to_table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [24])
        lines = [f"{'check':<{width}}  {'residual':>12}  {'tolerance':>10}  result"]
        lines.append("-" * (width + 36))
        for c in self.checks:
            verdict = "pass" if c.passed else "FAIL"
            lines.append(f"{c.name:<{width}}  {c.max_residual:>12.3e}  "
                         f"{c.tolerance:>10.1e}  {verdict}")
        lines.append("-" * (width + 36))
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)
