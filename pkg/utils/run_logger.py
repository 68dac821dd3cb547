"""
Structured logging for workbench runs
Tracks spec loading, command dispatch, report emission and errors
"""

import json
import logging
from datetime import datetime
from typing import Any, Dict

from config import config

logger = logging.getLogger(__name__)


def log_run_event(event_type: str, source: Dict[str, Any], details: Dict[str, Any]) -> None:
    """
    Write structured JSON log entry

    Args:
        event_type: Type of event (load, command, emit, error)
        source: Dict with path and digest of the input
        details: Event-specific details
    """
    try:
        config.LOG_DIR.mkdir(parents=True, exist_ok=True)

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "event_type": event_type,
            "source": {
                "path": str(source.get("path", "<text>")),
                "digest": source.get("digest", ""),
            },
            "details": details,
        }

        with open(config.RUN_LOG_FILE, 'a', encoding='utf-8') as f:
            f.write(json.dumps(log_entry, sort_keys=True) + '\n')

    except Exception as e:
        # Never fail a command because the run log is unavailable
        logger.warning(f"Failed to write run log: {e}")


def log_load(source: Dict[str, Any], spec) -> None:
    """Log a parsed spec"""
    log_run_event("load", source, {
        "action": "spec_loaded",
        "dim": spec.dim,
        "derivations": len(spec.phi),
        "warnings": len(spec.warnings),
    })


def log_command(source: Dict[str, Any], command: str, doc) -> None:
    """Log the outcome of a command"""
    log_run_event("command", source, {
        "action": command,
        "verdict": doc.verdict,
        "checks": {check.name: check.total_violations for check in doc.checks},
        "label": (doc.classification or {}).get("label"),
    })


def log_emit(source: Dict[str, Any], fmt: str, target: str) -> None:
    """Log where a rendered report went"""
    log_run_event("emit", source, {"action": "report_emitted", "format": fmt, "target": target})


def log_error(source: Dict[str, Any], error_summary: Dict[str, Any]) -> None:
    """Log a failed run"""
    log_run_event("error", source, {
        "action": "run_failed",
        "error_type": error_summary.get("error_type"),
        "message": error_summary.get("error_message"),
    })
