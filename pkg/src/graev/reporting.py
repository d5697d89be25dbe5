"""Structured pass/fail reports shared by the checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Finding:
    """One violated condition with its witness data."""

    condition: str
    details: dict[str, str]

    def render(self) -> str:
        inner = " ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.condition}: {inner}" if inner else self.condition


@dataclass
class CheckReport:
    title: str
    context: dict[str, str] = field(default_factory=dict)
    findings: list[Finding] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    checked: int = 0
    certified: bool = True

    @property
    def passed(self) -> bool:
        return not self.findings

    def add_finding(self, condition: str, **details) -> None:
        self.findings.append(Finding(condition, {k: str(v) for k, v in details.items()}))

    def merge(self, other: "CheckReport") -> None:
        self.findings.extend(other.findings)
        self.notes.extend(other.notes)
        self.checked += other.checked
        self.certified = self.certified and other.certified

    def lines(self) -> list[str]:
        out = [f"check: {self.title}"]
        for key, value in self.context.items():
            out.append(f"{key}: {value}")
        out.append(f"checked: {self.checked}")
        out.append(f"certified: {'yes' if self.certified else 'sampled-only'}")
        for note in self.notes:
            out.append(f"note: {note}")
        out.append(f"outcome: {'pass' if self.passed else 'fail'}")
        for i, finding in enumerate(self.findings, 1):
            out.append(f"finding {i}: {finding.render()}")
        return out

    def as_dict(self) -> dict:
        return {
            "check": self.title,
            "context": dict(self.context),
            "checked": self.checked,
            "certified": self.certified,
            "notes": list(self.notes),
            "outcome": "pass" if self.passed else "fail",
            "findings": [
                {"condition": f.condition, **f.details} for f in self.findings
            ],
        }
