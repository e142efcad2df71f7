"""
Writers for verification reports, plot-ready tables and certificates

JSON output is canonical: sorted keys, floats at a fixed 15 significant
digits, non-finite floats as null and no timestamps, so two runs with the
same configuration and seed produce byte-identical files.
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

import numpy as np
import pandas as pd
from jinja2 import Template
from pydantic import BaseModel

from utils.logger import logger

FLOAT_DIGITS = 15
CSV_FLOAT_FORMAT = "%.12e"

# Certificate file for one symbolic identity
CERTIFICATE_TEMPLATE = Template("""\
# {{ name }}
# {{ identity }}
# status: {{ status }}
# tool version {{ tool_version }}, seed {{ seed }}
{% for label, expression in expressions -%}
{{ label }} = {{ expression }}
{% endfor -%}
""")

# Plain-text summary printed for the first failing check
FAILURE_TEMPLATE = Template("""\
❌ {{ check.name }}: {{ check.identity }}
   max_error {{ "%.3e"|format(check.max_error) }} (tolerance {{ "%.1e"|format(check.tolerance) }})
{% for key, value in details -%}
   {{ key }}: {{ value }}
{% endfor -%}
""")


def canonical(value: Any) -> Any:
    """Plain JSON types with fixed-precision floats"""
    if isinstance(value, BaseModel):
        return canonical(value.model_dump())
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.{FLOAT_DIGITS}g}")
    if isinstance(value, Path):
        return str(value)
    return value


def report_json(report: BaseModel) -> str:
    return json.dumps(canonical(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_report(report: BaseModel, path: Union[str, Path]) -> Path:
    """
    Write a report model as canonical JSON

    Args:
        report: VerificationReport, SolveReport or any other model
        path: Output file; parent directories are created

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report_json(report), encoding="utf-8")
    logger.info(f"💾 Report written to {path}")
    return path


def write_table(table: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    logger.info(f"💾 Table with {len(table)} rows written to {path}")
    return path


def render_certificate(name: str, identity: str, expressions: Iterable[Tuple[str, str]],
                       status: str = "pass", tool_version: str = "", seed: int = 0) -> str:
    return CERTIFICATE_TEMPLATE.render(
        name=name,
        identity=identity,
        status=status,
        tool_version=tool_version,
        seed=seed,
        expressions=list(expressions),
    )


def write_certificates(certificates: Dict[str, Dict[str, Any]], directory: Union[str, Path],
                       tool_version: str = "", seed: int = 0) -> List[Path]:
    """
    Write one text file per certificate

    Args:
        certificates: {name: {"identity", "status", "expressions": [(label, text)]}}
        directory: Target directory

    Returns:
        Paths of the written files, in name order
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(certificates):
        entry = certificates[name]
        path = directory / f"{name}.txt"
        path.write_text(
            render_certificate(name, entry["identity"], entry["expressions"], entry.get("status", "pass"),
                               tool_version, seed),
            encoding="utf-8",
        )
        written.append(path)
    logger.info(f"💾 Wrote {len(written)} certificates to {directory}")
    return written


def format_failure(check) -> str:
    """Human-readable summary of a failing CheckResult"""
    return FAILURE_TEMPLATE.render(check=check, details=sorted(canonical(check.details).items()))


__all__ = [
    "CERTIFICATE_TEMPLATE",
    "FAILURE_TEMPLATE",
    "canonical",
    "report_json",
    "write_report",
    "write_table",
    "render_certificate",
    "write_certificates",
    "format_failure",
]
