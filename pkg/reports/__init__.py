"""
Report models and deterministic writers
"""

from reports.models import (
    BoundaryPerturbation,
    CheckResult,
    ModeCoefficient,
    SolveReport,
    VerificationReport,
)
from reports.writer import format_failure, report_json, write_certificates, write_report, write_table

__all__ = [
    "BoundaryPerturbation",
    "CheckResult",
    "ModeCoefficient",
    "SolveReport",
    "VerificationReport",
    "format_failure",
    "report_json",
    "write_certificates",
    "write_report",
    "write_table",
]
