"""
Centralized Error Handling for the Poisson Bialgebra Workbench

This module provides the exception hierarchy raised by the algebra modules,
logging configuration and error summaries for the run log.
"""

import logging
import traceback
import sys
from typing import Dict, Any, Optional, List
from datetime import datetime

# Messages and log settings come from config
from config import config

# Reports go to stdout, so the console handler writes to stderr
try:
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL),
        format=config.LOG_FORMAT,
        handlers=[
            logging.FileHandler(config.LOG_FILE),
            logging.StreamHandler(sys.stderr)
        ]
    )
except Exception:
    # Log file unavailable: console only
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL),
        format=config.LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)]
    )
logger = logging.getLogger(__name__)

class AppError(Exception):
    """Base exception class for workbench errors"""
    def __init__(self, message: str, error_type: str = "unknown_error", details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.error_type = error_type
        self.details = details or {}
        super().__init__(self.message)

class SingularMatrix(AppError):
    """Matrix inverse requested for a rank-deficient matrix"""
    def __init__(self, rank: int, dim: int, details: Optional[Dict[str, Any]] = None):
        message = config.get_error_message("singular_matrix", rank=rank, dim=dim)
        super().__init__(message, "singular_matrix", {"rank": rank, "dim": dim, **(details or {})})

class DimMismatch(AppError):
    """Operands with incompatible shapes"""
    def __init__(self, details: str):
        message = config.get_error_message("dim_mismatch", details=details)
        super().__init__(message, "dim_mismatch", {"details": details})

class ReportedError(AppError):
    """Precondition failure carrying the failing report"""
    error_key = "unknown_error"

    def __init__(self, report=None, **kwargs):
        violations = report.total_violations if report is not None else 0
        message = config.get_error_message(self.error_key, violations=violations, **kwargs)
        super().__init__(message, self.error_key, {"violations": violations, **kwargs})
        self.report = report

class InvalidAlgebra(ReportedError):
    error_key = "invalid_algebra"

class InvalidRepresentation(ReportedError):
    error_key = "invalid_representation"

class InvalidBialgebra(ReportedError):
    error_key = "invalid_bialgebra"

class NotRotaBaxter(ReportedError):
    error_key = "not_rota_baxter"

class NotQuadraticRB(ReportedError):
    error_key = "not_quadratic_rb"

class NotInvariant(ReportedError):
    error_key = "not_invariant"

class VipViolated(ReportedError):
    error_key = "vip_violated"

class NotFactorizable(AppError):
    """r-matrix lacks a nondegenerate invariant symmetric part or fails PYBE"""
    def __init__(self, label: str):
        message = config.get_error_message("not_factorizable", label=label)
        super().__init__(message, "not_factorizable", {"label": label})

class ZeroWeight(AppError):
    """Weight zero passed to an operation that divides by it"""
    def __init__(self, operation: str):
        message = config.get_error_message("zero_weight", operation=operation)
        super().__init__(message, "zero_weight", {"operation": operation})

class MissingForm(AppError):
    """Operation needs a bilinear form that was not supplied"""
    def __init__(self, operation: str):
        message = config.get_error_message("missing_form", operation=operation)
        super().__init__(message, "missing_form", {"operation": operation})

class NotCommutative(AppError):
    """Induction needs commutative and cocommutative structures"""
    def __init__(self, details: str):
        message = config.get_error_message("not_commutative", details=details)
        super().__init__(message, "not_commutative", {"details": details})

class IndexOutOfRange(AppError):
    """Sparse entry index outside the declared dimension"""
    def __init__(self, index: int, dim: int, line: int, column: int):
        message = config.get_error_message("index_out_of_range", index=index, dim=dim, line=line, column=column)
        super().__init__(message, "index_out_of_range",
                         {"index": index, "dim": dim, "line": line, "column": column})

class SpecParseError(AppError):
    """Spec text could not be parsed; carries every located diagnostic"""
    def __init__(self, diagnostics: List[Dict[str, Any]]):
        message = config.get_error_message("parse_error", count=len(diagnostics))
        if diagnostics:
            first = diagnostics[0]
            message += f" (first: line {first['line']}, column {first['column']}: {first['reason']})"
        super().__init__(message, "parse_error", {"diagnostics": diagnostics})
        self.diagnostics = diagnostics

class MissingInput(AppError):
    """A command needs a spec field that is absent"""
    def __init__(self, command: str, field: str):
        message = config.get_error_message("missing_input", command=command, field=field)
        super().__init__(message, "missing_input", {"command": command, "field": field})

def handle_error(error: Exception, context: str = "") -> None:
    """
    Log a failed operation

    Workbench errors log their message and, at DEBUG, their details.
    Anything else also logs the traceback.
    """
    line = f"{context or 'pybx'} failed: {error}"
    logger.error(line)
    if isinstance(error, AppError):
        logger.debug(f"{error.error_type} details: {error.details}")
    else:
        logger.error(traceback.format_exc())

def create_error_summary(error: Exception) -> Dict[str, Any]:
    """
    Summary of an error for the run log

    Returns:
        Dict[str, Any]: error_type, error_message, timestamp and, for workbench errors, details
    """
    summary: Dict[str, Any] = {
        "error_type": getattr(error, "error_type", type(error).__name__),
        "error_message": str(error),
        "timestamp": datetime.now().isoformat(),
    }
    if isinstance(error, AppError):
        summary["details"] = error.details
    return summary
