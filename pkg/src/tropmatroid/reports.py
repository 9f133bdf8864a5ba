"""Small PASS/FAIL report structure shared by the verification routines."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return self.checks[-1]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        out = [f"== {self.title} =="]
        out.extend(c.line() for c in self.checks)
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return out

    def __str__(self):
        return "\n".join(self.lines())
