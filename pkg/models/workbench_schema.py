"""
Pydantic schemas for workbench spec files and report documents
Everything read from or written to disk passes through these models
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import config
from models.report_schema import Report, Violation, format_scalar


class TensorEntry(BaseModel):
    """One structure constant: op(e_i, e_j) has coefficient value on e_k"""
    i: int = Field(..., ge=0, description="First basis index")
    j: int = Field(..., ge=0, description="Second basis index")
    k: int = Field(..., ge=0, description="Output basis index")
    value: str = Field(..., description="Rational literal")

    model_config = ConfigDict(frozen=True)

    @field_validator('value', mode='before')
    @classmethod
    def validate_value(cls, v) -> str:
        """Store values as canonical literals"""
        return format_scalar(Fraction(str(v)))


class MatrixEntry(BaseModel):
    """One matrix or 2-tensor coefficient at (i, j)"""
    i: int = Field(..., ge=0, description="Row index")
    j: int = Field(..., ge=0, description="Column index")
    value: str = Field(..., description="Rational literal")

    model_config = ConfigDict(frozen=True)

    @field_validator('value', mode='before')
    @classmethod
    def validate_value(cls, v) -> str:
        return format_scalar(Fraction(str(v)))


class WorkbenchSpec(BaseModel):
    """Parsed spec file: dimension, sparse structure constants and optional data"""
    field: str = Field(default=config.FIELD_TAG, description="Ground field tag")
    dim: int = Field(..., ge=1, le=config.MAX_DIM, description="Dimension of the underlying space")
    basis: List[str] = Field(default_factory=list, description="Basis names; e0..e{n-1} when omitted")
    commutative: bool = Field(default=False, description="Product declared commutative")
    cocommutative: bool = Field(default=False, description="Coproduct declared cocommutative")
    weight: Optional[str] = Field(None, description="Rota-Baxter weight as a rational literal")
    bracket: List[TensorEntry] = Field(default_factory=list, description="Lie bracket constants")
    product: List[TensorEntry] = Field(default_factory=list, description="Product constants")
    delta: Optional[List[TensorEntry]] = Field(None, description="Cobracket: delta(e_i) has value on e_j (x) e_k")
    coproduct: Optional[List[TensorEntry]] = Field(None, description="Coproduct: Delta(e_i) has value on e_j (x) e_k")
    r: Optional[List[MatrixEntry]] = Field(None, description="2-tensor r = sum r[i, j] e_i (x) e_j")
    p: Optional[List[MatrixEntry]] = Field(None, description="Rota-Baxter operator in column form")
    b: Optional[List[MatrixEntry]] = Field(None, description="Bilinear form B(e_i, e_j)")
    phi: List[List[MatrixEntry]] = Field(default_factory=list, description="Derivations in column form")
    psi: List[List[MatrixEntry]] = Field(default_factory=list, description="Coderivations in column form")
    warnings: List[str] = Field(default_factory=list, description="Non-fatal parse findings")

    model_config = ConfigDict(extra='forbid')

    @field_validator('field')
    @classmethod
    def validate_field(cls, v: str) -> str:
        if v != config.FIELD_TAG:
            raise ValueError(f"only the '{config.FIELD_TAG}' field is supported")
        return v

    @field_validator('weight', mode='before')
    @classmethod
    def validate_weight(cls, v) -> Optional[str]:
        if v is None:
            return None
        return format_scalar(Fraction(str(v)))

    @model_validator(mode='after')
    def check_indices(self) -> 'WorkbenchSpec':
        """Basis length and every index must agree with dim"""
        if not self.basis:
            self.basis = [f"e{i}" for i in range(self.dim)]
        if len(self.basis) != self.dim:
            raise ValueError(f"{len(self.basis)} basis names for dimension {self.dim}")
        tensors = [self.bracket, self.product, self.delta or [], self.coproduct or []]
        matrices = [self.r or [], self.p or [], self.b or []] + self.phi + self.psi
        for entry in [e for group in tensors for e in group]:
            if max(entry.i, entry.j, entry.k) >= self.dim:
                raise ValueError(f"entry ({entry.i}, {entry.j}, {entry.k}) outside dimension {self.dim}")
        for entry in [e for group in matrices for e in group]:
            if max(entry.i, entry.j) >= self.dim:
                raise ValueError(f"entry ({entry.i}, {entry.j}) outside dimension {self.dim}")
        return self


class CheckResult(BaseModel):
    """Verdict of one check suite as stored in a report document"""
    name: str = Field(..., min_length=1, description="Suite name")
    passed: bool = Field(..., description="True when no identity failed")
    total_violations: int = Field(default=0, ge=0, description="Exact count of failing instances")
    violations: List[Violation] = Field(default_factory=list, description="Capped list of failing instances")
    flags: Dict[str, bool] = Field(default_factory=dict, description="Evidence flags")
    notes: List[str] = Field(default_factory=list, description="Evidence lines")

    model_config = ConfigDict(extra='forbid')

    @classmethod
    def from_report(cls, report: Report) -> 'CheckResult':
        return cls(
            name=report.name,
            passed=report.passed,
            total_violations=report.total_violations,
            violations=list(report.violations),
            flags=dict(report.flags),
            notes=list(report.notes),
        )


class ReportDocument(BaseModel):
    """Outcome of one workbench command"""
    command: str = Field(..., description="Command that produced the document")
    input_digest: str = Field(..., pattern="^[0-9a-f]{64}$", description="SHA256 of the input text")
    verdict: str = Field(..., pattern="^(pass|fail)$", description="Overall verdict")
    checks: List[CheckResult] = Field(default_factory=list, description="Per-suite results")
    classification: Optional[Dict[str, Any]] = Field(None, description="Label, rank of S and condition evidence")
    emitted_spec: Optional[str] = Field(None, description="Spec text produced by double, convert or induce")
    settings: Dict[str, Any] = Field(default_factory=dict, description="Report settings in effect")
    timing: Optional[Dict[str, float]] = Field(None, description="Seconds per stage; omitted by default")

    model_config = ConfigDict(extra='forbid')

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def first_violation(self) -> Optional[tuple[str, Violation]]:
        """(suite name, violation) of the first failing instance"""
        for check in self.checks:
            if check.violations:
                return check.name, check.violations[0]
        return None


def _error_lines(e: Exception) -> List[str]:
    errors = []
    if hasattr(e, 'errors'):
        for error in e.errors():
            loc = " -> ".join(str(l) for l in error['loc'])
            errors.append(f"{loc}: {error['msg']}")
    else:
        errors.append(str(e))
    return errors


def validate_spec_dict(spec_dict: Dict[str, Any]) -> tuple[bool, Optional[WorkbenchSpec], List[str]]:
    """
    Validate a spec dictionary against the schema

    Returns:
        tuple: (is_valid, validated_spec or None, list of error messages)
    """
    try:
        validated = WorkbenchSpec(**spec_dict)
        return True, validated, []
    except Exception as e:
        return False, None, _error_lines(e)


def validate_report_json(text: str) -> tuple[bool, Optional[ReportDocument], List[str]]:
    """Validate a saved machine report"""
    try:
        validated = ReportDocument.model_validate_json(text)
        return True, validated, []
    except Exception as e:
        return False, None, _error_lines(e)
