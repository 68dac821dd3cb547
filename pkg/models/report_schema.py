"""
Pydantic schemas for verification reports
Every axiom check returns a Report listing the failing identities
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import config


def format_scalar(value) -> str:
    """Canonical rational literal: integers as "n", others as "p/q"."""
    return str(Fraction(value))


class Violation(BaseModel):
    """One failing identity instance"""
    identity: str = Field(..., min_length=1, description="Name of the failing identity")
    indices: List[int] = Field(default_factory=list, description="Basis indices of the failing instance")
    residual: List[str] = Field(default_factory=list, description="Nonzero residual as rational literals")

    model_config = ConfigDict(frozen=True)

    @field_validator('residual')
    @classmethod
    def validate_residual(cls, v: List[str]) -> List[str]:
        """Normalize residual entries to canonical literals"""
        return [format_scalar(Fraction(x)) for x in v]


class Report(BaseModel):
    """Outcome of one check suite"""
    name: str = Field(..., description="Suite name")
    violations: List[Violation] = Field(default_factory=list, description="At most REPORT_MAX_VIOLATIONS entries")
    total_violations: int = Field(default=0, ge=0, description="Exact count of failing instances")
    flags: Dict[str, bool] = Field(default_factory=dict, description="Evidence flags")
    notes: List[str] = Field(default_factory=list, description="Free-form evidence lines")

    model_config = ConfigDict(extra='forbid')

    @property
    def passed(self) -> bool:
        return self.total_violations == 0

    def add_violation(self, identity: str, indices: Sequence[int], residual: Iterable) -> None:
        """Count a violation; keep it verbatim while under the cap"""
        self.total_violations += 1
        if len(self.violations) < config.REPORT_MAX_VIOLATIONS:
            self.violations.append(Violation(
                identity=identity,
                indices=[int(i) for i in indices],
                residual=[format_scalar(x) for x in residual],
            ))

    def require(self, identity: str, holds: bool, residual: Optional[Iterable] = None) -> bool:
        """Record a boolean fact as a flag; a false fact is also a violation"""
        self.flags[identity] = bool(holds)
        if not holds:
            self.add_violation(identity, [], residual or [])
        return bool(holds)

    def merge(self, other: "Report", prefix: Optional[str] = None) -> "Report":
        """Fold another report's findings into this one"""
        tag = prefix or other.name
        for violation in other.violations:
            if len(self.violations) >= config.REPORT_MAX_VIOLATIONS:
                break
            self.violations.append(violation.model_copy(update={"identity": f"{tag}.{violation.identity}"}))
        self.total_violations += other.total_violations
        for key, value in other.flags.items():
            self.flags[f"{tag}.{key}"] = value
        self.notes.extend(f"{tag}: {note}" for note in other.notes)
        return self

    def first_violation(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None
