"""
Tests for the command-line front end and its exit codes
"""

import json
import shutil
from pathlib import Path

import pandas as pd
import pytest

from config.settings import settings
from run_verification import RunConfig, build_parser, main
from utils.errors import EXIT_CHECK_FAILURE, EXIT_NUMERICAL_ABORT, EXIT_OK, EXIT_USAGE

SAMPLE_PATH = Path(__file__).resolve().parent.parent / "data" / "sample_perturbation.json"
GOLDEN_DIR = Path(__file__).resolve().parent.parent / "data" / "golden"


@pytest.fixture
def out(tmp_path):
    """Fixture for an output directory"""
    return tmp_path / "outputs"


def test_run_config_defaults():
    """Settings fill every option the command line leaves out"""
    args = build_parser().parse_args(["flatbvp", "kernel"])
    config = RunConfig.from_args(args)
    assert config.command == "flatbvp kernel"
    assert config.seed == settings.SEED
    assert config.lmax == settings.LMAX
    assert config.tolerances == settings.tolerances
    assert config.output_dir == settings.OUTPUT_DIR


def test_run_config_rejects_bad_values():
    """L < 2 and non-positive tolerances are rejected"""
    base = RunConfig.from_args(build_parser().parse_args(["flatbvp", "kernel"])).model_dump()
    with pytest.raises(ValueError):
        RunConfig(**{**base, "lmax": 1})
    with pytest.raises(ValueError):
        RunConfig(**{**base, "tolerances": {"boundary": 0.0}})


@pytest.mark.parametrize("argv", [
    [],
    ["symbols"],
    ["flatbvp", "kernel", "--lmax", "1"],
    ["flatbvp", "solve"],
    ["adn", "check", "--samples", "0"],
])
def test_usage_errors(argv, out):
    """Malformed invocations exit 2"""
    assert main(argv + (["--output-dir", str(out)] if len(argv) > 1 else [])) == EXIT_USAGE


def test_unknown_fixture_is_usage_error(out):
    """An unknown fixture exits 2 without a report"""
    assert main(["geometry", "verify", "--fixture", "reissner_nordstrom", "--output-dir", str(out)]) == EXIT_USAGE
    assert not (out / "geometry_reissner_nordstrom_report.json").exists()


def test_missing_input_is_usage_error(out, tmp_path):
    """A missing boundary-data file exits 2"""
    argv = ["flatbvp", "solve", "--input", str(tmp_path / "none.json"), "--lmax", "4", "--output-dir", str(out)]
    assert main(argv) == EXIT_USAGE


def test_data_above_truncation_is_usage_error(out):
    """Degree-2 data need L >= 4"""
    argv = ["flatbvp", "solve", "--input", str(SAMPLE_PATH), "--lmax", "3", "--output-dir", str(out)]
    assert main(argv) == EXIT_USAGE


def test_kernel_report_is_reproducible(out):
    """flatbvp kernel exits 0 and two runs write byte-identical reports"""
    texts = []
    for _ in range(2):
        assert main(["flatbvp", "kernel", "--lmax", "4", "--output-dir", str(out), "--seed", "3"]) == EXIT_OK
        texts.append((out / "flatbvp_kernel_L4_report.json").read_text())
    assert texts[0] == texts[1]
    report = json.loads(texts[0])
    assert report["seed"] == 3
    assert report["config"]["lmax"] == 4
    assert report["solves"][0]["reduced_kernel_dim"] == 0


def test_ill_posed_truncation_aborts(out, monkeypatch):
    """A kernel threshold of sigma_max makes every solve ill-posed: exit 3"""
    monkeypatch.setattr(settings, "KERNEL_THRESHOLD", 1.0)
    argv = ["flatbvp", "solve", "--input", str(SAMPLE_PATH), "--lmax", "4", "--output-dir", str(out)]
    assert main(argv) == EXIT_NUMERICAL_ABORT


@pytest.mark.slow
def test_solve_sample_with_profiles(out):
    """The shipped sample solves at L = 6 with boundary residual below 1e-8"""
    argv = ["flatbvp", "solve", "--input", str(SAMPLE_PATH), "--lmax", "6", "--profiles", "--output-dir", str(out)]
    assert main(argv) == EXIT_OK
    report = json.loads((out / "flatbvp_solve_L6_report.json").read_text())
    assert report["solves"][0]["boundary_residual"] < 1e-8
    profiles = pd.read_csv(out / "radial_profiles_L6.csv")
    assert list(profiles.columns) == ["r", "component", "value"]


@pytest.mark.slow
def test_symbols_verify_with_certificates(out):
    """symbols verify exits 0, lists at least eight identities and writes the certificate"""
    assert main(["symbols", "verify", "--emit-certificates", "--output-dir", str(out)]) == EXIT_OK
    report = json.loads((out / "symbols_report.json").read_text())
    assert len([c for c in report["checks"] if not c["name"].startswith("golden_")]) >= 8
    assert "8*N**8" in (out / "certificates" / "complementing_certificate.txt").read_text()


@pytest.mark.slow
def test_corrupted_golden_fails(out, tmp_path):
    """A corrupted golden entry exits 1 and the report carries the entry"""
    golden = tmp_path / "golden"
    shutil.copytree(GOLDEN_DIR, golden)
    path = golden / "determinants.txt"
    path.write_text(path.read_text().replace("certificate = 8*N**8", "certificate = 9*N**8"))
    argv = ["symbols", "verify", "--golden-dir", str(golden), "--output-dir", str(out)]
    assert main(argv) == EXIT_CHECK_FAILURE
    report = json.loads((out / "symbols_report.json").read_text())
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in failed] == ["golden_determinants"]
    assert failed[0]["details"]["entry"] == "certificate"


@pytest.mark.slow
def test_kernel_stability_band(out):
    """flatbvp kernel --stability adds a passing sigma_min band over L = 4, 6, 8"""
    assert main(["flatbvp", "kernel", "--lmax", "4", "--stability", "--output-dir", str(out)]) == EXIT_OK
    report = json.loads((out / "flatbvp_kernel_L4_report.json").read_text())
    band = next(c for c in report["checks"] if c["name"] == "sigma_min_stability")
    assert band["status"] == "pass"
    assert band["details"]["lmax"] == [4, 6, 8]
