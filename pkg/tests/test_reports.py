"""
Tests for report models and writers
"""

import json

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from reports.models import BoundaryPerturbation, CheckResult, ModeCoefficient, SolveReport, VerificationReport
from reports.writer import (
    canonical,
    format_failure,
    render_certificate,
    report_json,
    write_certificates,
    write_report,
    write_table,
)


@pytest.fixture
def checks():
    """Fixture for a pass, an info and a fail check"""
    return [
        CheckResult(name="vacuum_ricci", identity="Ric = 0", status="pass", max_error=2e-9, tolerance=1e-6),
        CheckResult(name="printed_variant", identity="printed factor", status="info", max_error=1.0, tolerance=0.0),
        CheckResult(name="boundary_residual", identity="data reproduced", status="fail", max_error=3e-6,
                    tolerance=1e-8, details={"lmax": 4}),
    ]


@pytest.fixture
def report(checks):
    """Fixture for a verification report"""
    return VerificationReport(tool_version="0.1.0", suite="flatbvp-solve", seed=7,
                              config={"lmax": 4, "output_dir": "./outputs"}, checks=checks)


def test_check_status_is_validated():
    """Only pass, fail and info are accepted"""
    with pytest.raises(ValidationError):
        CheckResult(name="x", identity="y", status="ok", max_error=0.0, tolerance=1.0)
    with pytest.raises(ValidationError):
        CheckResult(name="x", identity="y", status="pass", max_error=0.0, tolerance=-1.0)


def test_mode_order_is_bounded_by_degree():
    """|m| <= l"""
    assert ModeCoefficient(l=2, m=-2, value=1.0).part == "scalar"
    with pytest.raises(ValidationError):
        ModeCoefficient(l=1, m=2, value=1.0)


def test_perturbation_part_rules():
    """Tensor even/odd modes need l >= 2, tau modes l >= 1"""
    with pytest.raises(ValidationError):
        BoundaryPerturbation(lmax=1, gamma_prime=[ModeCoefficient(l=1, m=0, value=1.0, part="even")])
    with pytest.raises(ValidationError):
        BoundaryPerturbation(lmax=0, tau_prime=[ModeCoefficient(l=0, m=0, value=1.0, part="even")])
    with pytest.raises(ValidationError):
        BoundaryPerturbation(lmax=2, tau_prime=[ModeCoefficient(l=2, m=0, value=1.0, part="scalar")])
    data = BoundaryPerturbation(lmax=2, H_prime=[ModeCoefficient(l=2, m=1, value=1.0)],
                                tau_prime=[ModeCoefficient(l=1, m=0, value=1.0, part="odd")])
    assert data.max_degree() == 2
    assert [name for name, _ in data.modes()] == ["H_prime", "tau_prime"]


def test_info_does_not_fail_report(checks, report):
    """passed and first_failure ignore info checks"""
    assert not report.passed
    assert report.first_failure().name == "boundary_residual"
    clean = report.model_copy(update={"checks": checks[:2]})
    assert clean.passed
    assert clean.first_failure() is None


def test_canonical_values():
    """numpy scalars become plain types, non-finite floats become null"""
    value = canonical({"a": np.float64(0.1 + 0.2), "b": np.int64(3), "c": [np.nan, np.inf], "d": np.array([1.5]),
                       "e": np.bool_(True), 4: (1, 2)})
    assert value == {"a": 0.3, "b": 3, "c": [None, None], "d": [1.5], "e": True, "4": [1, 2]}
    assert isinstance(value["b"], int)


def test_report_json_is_deterministic(report):
    """Equal reports give identical, key-sorted text"""
    text = report_json(report)
    assert text == report_json(VerificationReport.model_validate(report.model_dump()))
    keys = list(json.loads(text))
    assert keys == sorted(keys)
    assert text.endswith("\n")


def test_write_report_round_trip(tmp_path, report):
    """A written report validates back to an equal model"""
    solve = SolveReport(mode="kernel", lmax=4, n_rows=10, n_cols=5, sigma_max=2.0, sigma_min=0.5,
                        kernel_dim=10, threshold=1e-10)
    report = report.model_copy(update={"solves": [solve]})
    path = write_report(report, tmp_path / "nested" / "report.json")
    loaded = VerificationReport.model_validate_json(path.read_text())
    assert loaded == report
    assert loaded.solves[0].status == "pass"


def test_write_table(tmp_path):
    """Tables keep their columns and row count"""
    frame = pd.DataFrame({"r": [1.0, 2.0], "component": ["v", "v"], "value": [0.5, 0.25]})
    path = write_table(frame, tmp_path / "profiles.csv")
    back = pd.read_csv(path)
    assert list(back.columns) == ["r", "component", "value"]
    assert back["value"].tolist() == pytest.approx([0.5, 0.25])


def test_render_certificate():
    """Certificate text has a header and one line per expression"""
    text = render_certificate("complementing_certificate", "rem(det, a)",
                              [("certificate", "8*N**8"), ("expected", "8*N**8")], tool_version="0.1.0", seed=3)
    lines = text.splitlines()
    assert lines[0] == "# complementing_certificate"
    assert "certificate = 8*N**8" in lines
    assert "expected = 8*N**8" in lines
    assert "# tool version 0.1.0, seed 3" in lines


def test_write_certificates(tmp_path):
    """One file per certificate, named after it"""
    certificates = {
        "b": {"identity": "second", "expressions": [("x", "1")]},
        "a": {"identity": "first", "status": "fail", "expressions": [("y", "2")]},
    }
    paths = write_certificates(certificates, tmp_path)
    assert [p.name for p in paths] == ["a.txt", "b.txt"]
    assert "# status: fail" in paths[0].read_text()


def test_format_failure(checks):
    """The failure summary names the check and its details"""
    text = format_failure(checks[2])
    assert "boundary_residual" in text
    assert "3.000e-06" in text
    assert "lmax: 4" in text
