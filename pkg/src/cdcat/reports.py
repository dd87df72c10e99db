"""Suite reports: per-check status with counterexamples, JSON-renderable."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None

    def to_dict(self):
        out = {"name": self.name, "status": "pass" if self.passed else "fail",
               "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class Report:
    suite: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, name, passed, checked=0, counterexample=None):
        self.checks.append(CheckResult(name, passed, checked, counterexample))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self):
        # elapsed time is deliberately not part of the payload so that a
        # fixed seed and config give byte-identical serialized reports
        return {
            "suite": self.suite,
            "config": {k: self.config[k] for k in sorted(self.config)},
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def render(self) -> str:
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"  [{status}] {c.name} ({c.checked} checked)"
            lines.append(line)
            if c.counterexample:
                lines.append(f"         counterexample: {c.counterexample}")
        lines.append(f"result: {'all passed' if self.passed else 'FAILURES'}")
        return "\n".join(lines)
