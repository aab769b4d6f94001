"""Pass/fail verification reports shared by the checking suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str | None = None

    def to_json(self):
        out = {"name": self.name, "passed": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=None):
        self.checks.append(Check(name, bool(passed), detail))
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self):
        lines = [f"[{self.suite}] {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  {'PASS' if c.passed else 'FAIL'} {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
        return "\n".join(lines)

    def to_json(self):
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}
