"""
Verification report models.
"""
from typing import Optional

from pydantic import BaseModel, Field


class Violation(BaseModel):
    """One failed check, with the seed that reproduces it."""
    check: str
    n: int
    seed: Optional[int] = Field(None, description="Trial seed; None for exhaustive sweeps")
    detail: str


class VerificationReport(BaseModel):
    n: int
    samples: int = 0
    seed: int
    policy: str
    exhaustive: bool = False
    class_count: Optional[int] = None
    expected_class_count: Optional[int] = None
    checks: dict[str, int] = Field(default_factory=dict, description="Checks run, by name")
    violations: list[Violation] = Field(default_factory=list)
    disagreements: list[Violation] = Field(
        default_factory=list,
        description="Exactness failures tolerated under the representative symmetry policy"
    )

    @property
    def passed(self) -> bool:
        return not self.violations

    def count(self, check: str) -> None:
        self.checks[check] = self.checks.get(check, 0) + 1

    def summary_lines(self) -> list[str]:
        lines = [f"{'PASS' if self.passed else 'FAIL'} n={self.n} seed={self.seed} policy={self.policy}"]
        if self.class_count is not None:
            line = f"#Classes {self.class_count}"
            if self.expected_class_count is not None:
                line += f" (expected {self.expected_class_count})"
            lines.append(line)
        for check, count in sorted(self.checks.items()):
            lines.append(f"  {check}: {count}")
        for v in self.violations:
            lines.append(f"VIOLATION {v.check} n={v.n} seed={v.seed}: {v.detail}")
        if self.disagreements:
            lines.append(f"{len(self.disagreements)} disagreement(s) under the {self.policy} policy")
        return lines
