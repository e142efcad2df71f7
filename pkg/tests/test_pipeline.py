"""
Tests for the verification suites behind the Prefect flows
"""

from pathlib import Path

import pandas as pd
import pytest

from config.settings import settings
from pipelines.verification_pipeline import (
    STABILITY_LEVELS,
    check_from_dict,
    exact_check,
    run_adn_suite,
    run_flatbvp_kernel_suite,
    run_flatbvp_solve_suite,
    run_geometry_suite,
    run_symbols_suite,
    sigma_min_stability,
)
from reports.models import SolveReport
from utils.errors import UsageError

SAMPLE_PATH = Path(__file__).resolve().parent.parent / "data" / "sample_perturbation.json"


@pytest.fixture
def config():
    """Fixture for a configuration echo"""
    return {"command": "test", "seed": 5}


def test_exact_check_statuses():
    """Exact checks report 0 or 1 and honour an explicit status"""
    assert exact_check("a", "x = x", True).max_error == 0.0
    failed = exact_check("b", "x = y", False, entry="h12")
    assert (failed.status, failed.max_error, failed.details) == ("fail", 1.0, {"entry": "h12"})
    assert exact_check("c", "printed", False, status="info").status == "info"


def test_check_from_battery_entry():
    """Battery dicts become CheckResults with the point count in details"""
    check = check_from_dict({"name": "vacuum_ricci", "identity": "Ric = 0", "status": "pass",
                             "max_error": 1e-9, "tolerance": 1e-6, "n_points": 6})
    assert check.details == {"n_points": 6}
    assert check.tolerance == 1e-6


def test_kernel_suite(config):
    """Kernel suite at L = 4: rigid kernel only, both harmonic-vector problems injective"""
    report = run_flatbvp_kernel_suite(config, lmax=4, seed=5)
    assert report.suite == "flatbvp-kernel"
    assert report.seed == 5
    assert [c.name for c in report.checks] == ["flat_kernel", "harmonic_vector_dirichlet", "harmonic_vector_neumann"]
    assert report.passed
    assert report.solves[0].kernel_dim == 10
    assert report.solves[0].reduced_kernel_dim == 0


def kernel_report(lmax, sigma_min, reduced=0):
    return SolveReport(mode="kernel", lmax=lmax, n_rows=100, n_cols=50, sigma_max=10.0, sigma_min=sigma_min,
                       kernel_dim=10 + reduced, rigid_dim=10, reduced_kernel_dim=reduced, threshold=1e-10)


def test_sigma_min_band():
    """The band passes within a factor 2 and fails on spread or a reduced kernel"""
    stable = sigma_min_stability([kernel_report(4, 0.21), kernel_report(6, 0.2), kernel_report(8, 0.19)])
    assert stable.status == "pass"
    assert stable.max_error == pytest.approx(0.21 / 0.19)
    assert stable.details["lmax"] == [4, 6, 8]
    collapsing = sigma_min_stability([kernel_report(4, 0.21), kernel_report(6, 0.1), kernel_report(8, 0.01)])
    assert collapsing.status == "fail"
    assert collapsing.max_error > 2
    degenerate = sigma_min_stability([kernel_report(4, 0.21), kernel_report(6, 0.21, reduced=1)])
    assert degenerate.status == "fail"
    assert sigma_min_stability([kernel_report(4, 0.2), kernel_report(6, 0.0)]).status == "fail"


@pytest.mark.slow
def test_kernel_suite_with_band(config):
    """The kernel suite with the L = 4, 6, 8 ladder reports a passing sigma_min band"""
    report = run_flatbvp_kernel_suite(config, lmax=4, seed=5, stability_levels=STABILITY_LEVELS)
    assert report.passed
    band = next(c for c in report.checks if c.name == "sigma_min_stability")
    assert band.max_error < 2
    assert band.details["reduced_kernel_dim"] == [0, 0, 0]
    assert [s.lmax for s in report.solves] == [4, 4, 4, 6, 8]


def test_solve_suite_rejects_missing_file(config, tmp_path):
    """A missing input file is a usage error"""
    with pytest.raises(UsageError):
        run_flatbvp_solve_suite(config, str(tmp_path / "missing.json"), lmax=4)


@pytest.mark.slow
def test_solve_suite_on_shipped_sample(config, tmp_path):
    """The shipped sample solves at L = 6 with stable coefficients and writes profiles"""
    profiles = tmp_path / "profiles.csv"
    report = run_flatbvp_solve_suite(config, str(SAMPLE_PATH), lmax=6, profiles_path=str(profiles))
    assert report.passed
    assert {c.name for c in report.checks} == {
        "boundary_residual", "interior_residual", "gauge_residual", "truncation_stability"
    }
    assert [s.lmax for s in report.solves] == [6, 8]
    assert report.solves[0].boundary_residual < 1e-8
    assert list(pd.read_csv(profiles).columns) == ["r", "component", "value"]


@pytest.mark.slow
def test_geometry_suite_on_minkowski(config, tmp_path):
    """Minkowski passes every identity and the convergence table is written"""
    table = tmp_path / "convergence.csv"
    report = run_geometry_suite(config, "minkowski", seed=settings.SEED, probe_count=6, table_path=str(table))
    assert report.passed
    assert "fd_convergence" in {c.name for c in report.checks}
    assert list(pd.read_csv(table).columns) == ["step", "residual", "ratio", "ok"]


def test_geometry_suite_rejects_unknown_fixture(config):
    """Unknown fixture names are usage errors"""
    with pytest.raises(UsageError):
        run_geometry_suite(config, "reissner_nordstrom")


@pytest.mark.slow
def test_adn_suite(config):
    """Sweeps and symbolic/numeric agreement pass on 20 samples"""
    report = run_adn_suite(config, samples=20, seed=settings.SEED)
    assert {c.name for c in report.checks} == {
        "complementing_numeric", "proper_ellipticity", "symbolic_numeric_agreement"
    }
    assert report.passed


@pytest.mark.slow
def test_symbols_suite(config, tmp_path):
    """At least eight identities hold and certificates are written"""
    report = run_symbols_suite(config, certificate_dir=str(tmp_path))
    identities = [c for c in report.checks if not c.name.startswith("golden_")]
    assert len(identities) >= 8
    assert report.passed
    assert {c.name for c in report.checks} >= {"interior_determinant", "determinant_ratio",
                                                "complementing_certificate", "golden_determinants"}
    certificate = (tmp_path / "complementing_certificate.txt").read_text()
    assert "8*N**8" in certificate
