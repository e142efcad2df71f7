"""
Tests for proper ellipticity and the complementing condition
"""

import numpy as np
import pytest

from adn import (
    CoefficientSample,
    complementing_check_numeric,
    complementing_check_symbolic,
    complementing_sweep,
    draw_samples,
    ellipticity_sweep,
    proper_ellipticity_check,
)
from adn.complementing import certificate_at_zero_eta, symbolic_numeric_agreement
from adn.ellipticity import quadratic_coefficients, symbol_on_line
from utils.errors import InadmissibleSampleError


@pytest.fixture
def flat_sample():
    """Fixture for N = 1, X = 0, eta = (1, 0)"""
    return CoefficientSample(1.0, (0.0, 0.0, 0.0), (1.0, 0.0))


def test_flat_roots(flat_sample):
    """Test z^2 + 1 = 0 gives z = +-i"""
    roots = proper_ellipticity_check(flat_sample)
    assert roots.z_plus == pytest.approx(1j)
    assert roots.z_minus == pytest.approx(-1j)


def test_shifted_roots():
    """Test N = 1, X = (0.5, 0, 0) has leading coefficient 0.75 and conjugate roots"""
    sample = CoefficientSample(1.0, (0.5, 0.0, 0.0), (1.0, 0.0))
    A, _, _ = quadratic_coefficients(sample)
    assert A == pytest.approx(0.75)
    roots = proper_ellipticity_check(sample)
    assert roots.z_minus == pytest.approx(roots.z_plus.conjugate())
    assert abs(symbol_on_line(sample, roots.z_plus)) < 1e-12


def test_inadmissible_shift():
    """Test |X| >= N is rejected"""
    with pytest.raises(InadmissibleSampleError):
        CoefficientSample(1.0, (0.6, 0.9, 0.0), (1.0, 0.0))


def test_zero_eta_rejected():
    """Test eta = 0 is rejected"""
    with pytest.raises(InadmissibleSampleError):
        CoefficientSample(1.0, (0.0, 0.0, 0.0), (0.0, 0.0))


def test_random_roots_split_half_planes():
    """Test one root per half-plane on 200 random samples"""
    for sample in draw_samples(200, seed=7):
        roots = proper_ellipticity_check(sample)
        assert roots.z_plus.imag > 0 > roots.z_minus.imag
    assert ellipticity_sweep(200, seed=7)["pass"]


def test_samples_are_admissible_and_reproducible():
    """Test the sampler respects |X| < 0.95 N and is seeded"""
    first, second = draw_samples(20, seed=3), draw_samples(20, seed=3)
    assert first == second
    for sample in first:
        assert np.linalg.norm(sample.X) < 0.95 * sample.N
        assert 0.1 <= sample.eta_norm <= 10.0


def test_flat_numeric_determinant(flat_sample):
    """Test det B~ = -1/4 at N = 1, X = 0, |eta| = 1"""
    result = complementing_check_numeric(flat_sample)
    assert result["det_value"] == pytest.approx(-0.25, rel=1e-10)
    assert result["pass"]


def test_numeric_determinant_homogeneity():
    """Test eta -> 2 eta multiplies det by 2^8"""
    sample = CoefficientSample(1.3, (0.2, -0.4, 0.1), (0.6, -0.3))
    base = complementing_check_numeric(sample)["det_value"]
    doubled = complementing_check_numeric(sample.scaled(2.0))["det_value"]
    assert doubled == pytest.approx(256 * base, rel=1e-9)


def test_complementing_sweep():
    """Test 200 random admissible samples all match the closed form"""
    report = complementing_sweep(200, seed=11)
    assert report["pass"]
    assert report["failures"] == 0
    assert report["worst_relative_error"] < 1e-8


@pytest.mark.slow
def test_symbolic_certificate():
    """Test the exact certificate is 8 N^8 |eta|^8 and the homotopy never vanishes"""
    report = complementing_check_symbolic()
    assert report["pass"]
    assert report["x_free"]
    assert report["homotopy_grid_min"] > 0


@pytest.mark.slow
def test_certificate_vanishes_at_zero_eta():
    """Test eta = 0 makes the certificate vanish"""
    assert certificate_at_zero_eta()


@pytest.mark.slow
def test_symbolic_and_numeric_paths_agree():
    """Test the certificate at 50 samples matches the numeric determinant"""
    assert symbolic_numeric_agreement(50, seed=5) < 1e-8
