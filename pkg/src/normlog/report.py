"""Outcome record shared by all identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Result of one verification run.

    ``hypothesis_met`` records whether the identity's preconditions held
    for this instance; when they do not, the conclusion is skipped and
    ``passed`` stays False. Every residual is a finite non-negative real,
    paired with the tolerance it was compared against.
    """

    check_name: str
    passed: bool
    hypothesis_met: bool
    residuals: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self):
        if self.passed and not self.hypothesis_met:
            raise ValueError("passed requires hypothesis_met")
        for name, value in self.residuals.items():
            if not (value >= 0.0 and value < float("inf")):
                raise ValueError(f"residual {name!r} must be finite and >= 0")

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "hypothesis_met": self.hypothesis_met,
            "passed": self.passed,
            "residuals": dict(sorted(self.residuals.items())),
            "tolerances": dict(sorted(self.tolerances.items())),
            "notes": self.notes,
        }
