"""
Configuration Management for the Poisson Bialgebra Workbench

This module provides centralized configuration settings for the workbench,
including exact-arithmetic limits, report settings, spec-file format,
data paths and logging.
"""

import os
from dotenv import load_dotenv
from typing import Dict
from pathlib import Path

class Config:
    """Centralized configuration class for the workbench"""

    # Load environment variables from .env if present
    load_dotenv()

    # ===============================================================================
    # DATA PATHS AND FILES
    # ===============================================================================

    # Base directories
    BASE_DIR = Path(__file__).parent
    DATA_DIR = BASE_DIR / "data"
    SPECS_DIR = DATA_DIR / "specs"
    LOG_DIR = BASE_DIR / "logs"

    # ===============================================================================
    # EXACT ARITHMETIC SETTINGS
    # ===============================================================================

    # Only the rational field is supported
    FIELD_TAG = "rational"

    # Dense storage ceiling for structure constants
    MAX_DIM = 16

    # ===============================================================================
    # REPORT SETTINGS
    # ===============================================================================

    # Violations kept verbatim per report; the total count stays exact
    REPORT_MAX_VIOLATIONS = 32
    DEFAULT_REPORT_FORMAT = "human"
    REPORT_FORMATS = ["human", "machine"]
    INCLUDE_TIMING = os.getenv("PYBX_INCLUDE_TIMING", "0") == "1"

    # Exit codes of the command-line tool
    EXIT_PASS = 0
    EXIT_FAIL = 1
    EXIT_ERROR = 2

    # ===============================================================================
    # RANDOMIZED CHECK SETTINGS
    # ===============================================================================

    RANDOM_SEED = int(os.getenv("PYBX_RANDOM_SEED", "20240611"))
    RANDOM_ENTRY_RANGE = 3  # numerators drawn from [-3, 3]
    RANDOM_DENOMINATORS = [1, 2, 3]

    # ===============================================================================
    # SPEC FILE SETTINGS
    # ===============================================================================

    SPEC_HEADER = "pybx-spec 1"
    SPEC_SUFFIX = ".pbx"
    CONVERT_DIRECTIONS = ["rb2fact", "fact2rb", "tilde", "tau"]
    SPEC_FLAGS = ["commutative", "cocommutative"]

    # ===============================================================================
    # LOGGING SETTINGS
    # ===============================================================================

    LOG_LEVEL = os.getenv("PYBX_LOG_LEVEL", "INFO")
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_FILE = LOG_DIR / "pybx.log"
    RUN_LOG_FILE = LOG_DIR / "pybx_runs.jsonl"

    # ===============================================================================
    # ERROR HANDLING SETTINGS
    # ===============================================================================

    # Error messages
    ERROR_MESSAGES = {
        "singular_matrix": "Matrix is singular (rank {rank} < {dim})",
        "dim_mismatch": "Dimension mismatch: {details}",
        "invalid_algebra": "Not a Poisson algebra: {violations} identity violations",
        "invalid_representation": "Not a representation: {violations} identity violations",
        "invalid_bialgebra": "Not a bialgebra: {violations} identity violations",
        "not_invariant": "Tensor or form is not invariant: {details}",
        "not_factorizable": "r-matrix is not factorizable (label {label})",
        "zero_weight": "Weight must be nonzero for {operation}",
        "not_rota_baxter": "Operator is not Rota-Baxter of weight {weight}",
        "not_quadratic_rb": "Not a quadratic Rota-Baxter structure: {violations} violations",
        "missing_form": "A bilinear form is required for {operation}",
        "vip_violated": "Derivation/coderivation compatibility fails: {details}",
        "not_commutative": "Commutative and cocommutative structures required: {details}",
        "parse_error": "{count} problem(s) while parsing spec",
        "index_out_of_range": "Index {index} out of range for dimension {dim} (line {line}, column {column})",
        "missing_input": "Command '{command}' needs spec field '{field}'",
    }

    @classmethod
    def ensure_directories(cls) -> None:
        """Create necessary directories if they don't exist"""
        directories = [cls.DATA_DIR, cls.SPECS_DIR, cls.LOG_DIR]

        for directory in directories:
            directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def get_error_message(cls, error_type: str, **kwargs) -> str:
        """Get formatted error message"""
        message_template = cls.ERROR_MESSAGES.get(error_type, "An error occurred: {details}")
        try:
            return message_template.format(**kwargs)
        except KeyError:
            return message_template

    @classmethod
    def report_settings(cls) -> Dict[str, object]:
        """Report-related settings, recorded in machine reports"""
        return {
            "max_violations": cls.REPORT_MAX_VIOLATIONS,
            "field": cls.FIELD_TAG,
        }

# Create global config instance
config = Config()

# Ensure directories exist
config.ensure_directories()
