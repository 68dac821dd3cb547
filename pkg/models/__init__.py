"""
Report and spec schema models for validation
"""

from .report_schema import (
    Report,
    Violation,
    format_scalar
)
from .workbench_schema import (
    CheckResult,
    MatrixEntry,
    ReportDocument,
    TensorEntry,
    WorkbenchSpec,
    validate_report_json,
    validate_spec_dict
)

__all__ = [
    'Report',
    'Violation',
    'format_scalar',
    'CheckResult',
    'MatrixEntry',
    'ReportDocument',
    'TensorEntry',
    'WorkbenchSpec',
    'validate_report_json',
    'validate_spec_dict'
]
