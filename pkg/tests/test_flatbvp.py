"""
Tests for the spectral flat-background solver
"""

import json
from pathlib import Path

import numpy as np
import pytest

from flatbvp import (
    BLOCKS,
    COMPONENTS,
    CONDITIONS,
    LinearizedUnknowns,
    ambient_data,
    assemble,
    harmonic_vector_flat,
    basis_eval,
    basis_table,
    coupling_bandwidth,
    kernel_check,
    load_perturbation,
    radial_profiles,
    radial_reference,
    random_perturbation,
    random_rotation,
    rigid_vectors,
    rotate_perturbation,
    rotate_unknowns,
    solve,
    sphere_quadrature,
    sphere_values,
    write_perturbation,
    zero_perturbation,
)
from flatbvp.harmonics import STENCIL_MARGIN, mode_count
from flatbvp.solve import exterior_points, radial_fields_at
from reports.models import BoundaryPerturbation, ModeCoefficient
from utils.errors import DomainError, UsageError

SQRT_FOUR_PI = np.sqrt(4.0 * np.pi)
SAMPLE_PATH = Path(__file__).resolve().parent.parent / "data" / "sample_perturbation.json"


@pytest.fixture(scope="module")
def system4():
    """Fixture for the homogeneous system at L = 4"""
    return assemble(4)


@pytest.fixture(scope="module")
def system6():
    """Fixture for the homogeneous system at L = 6"""
    return assemble(6)


@pytest.fixture
def rng():
    """Fixture for a seeded generator"""
    return np.random.default_rng(7)


@pytest.fixture(scope="module")
def sample_data():
    """Fixture for a random perturbation supported at l in {0, 2}"""
    return random_perturbation(np.random.default_rng(11), lmax=2)


# quadrature and basis

def test_quadrature_weights_and_moments():
    """The rule has total weight 4 pi and integrates x^2 and x^4 exactly"""
    grid = sphere_quadrature(8)
    assert grid.integrate(np.ones(grid.size)) == pytest.approx(4.0 * np.pi, rel=1e-14)
    assert grid.integrate(grid.points[:, 0] ** 2) == pytest.approx(4.0 * np.pi / 3.0, rel=1e-13)
    assert grid.integrate(grid.points[:, 2] ** 4) == pytest.approx(4.0 * np.pi / 5.0, rel=1e-13)


def test_rotated_quadrature_stays_on_sphere():
    """Rotating the grid keeps nodes on the unit sphere"""
    grid = sphere_quadrature(6, rotation=random_rotation(3))
    assert np.allclose(np.linalg.norm(grid.points, axis=-1), 1.0, atol=1e-14)


def test_l0_basis_element():
    """u_00 is 1 / (sqrt(4 pi) r) with gradient -x / (sqrt(4 pi) r^3)"""
    x = np.array([1.2, -0.4, 2.0])
    r = np.linalg.norm(x)
    value, gradient, _ = basis_eval(0, 0, x)
    assert value == pytest.approx(1.0 / (SQRT_FOUR_PI * r), rel=1e-13)
    assert np.allclose(gradient, -x / (SQRT_FOUR_PI * r ** 3), atol=1e-14)


def test_basis_is_harmonic():
    """The flat Laplacian of every u_lm, l <= 5, vanishes at 20 exterior points"""
    points = exterior_points(20, seed=5)
    _, _, hessians = basis_table(5, points, with_hessian=True)
    assert np.max(np.abs(np.einsum('knaa->kn', hessians))) < 1e-10


def test_basis_gradient_matches_finite_differences():
    """Closed-form gradients agree with central differences"""
    x = np.array([0.9, 1.1, -0.7])
    step = 1e-6
    for l, m in [(1, -1), (2, 1), (3, 0), (4, -3)]:
        _, gradient, hessian = basis_eval(l, m, x)
        for a, unit in enumerate(np.eye(3)):
            plus, minus = basis_eval(l, m, x + step * unit), basis_eval(l, m, x - step * unit)
            assert (plus[0] - minus[0]) / (2 * step) == pytest.approx(gradient[a], abs=1e-8)
            assert np.allclose((plus[1] - minus[1]) / (2 * step), hessian[a], atol=1e-7)


def test_sphere_values_are_orthonormal():
    """Y_lm, l <= 6, are orthonormal under the quadrature"""
    grid = sphere_quadrature(12)
    Y = sphere_values(6, grid.points)
    gram = (Y * grid.weights) @ Y.T
    assert np.max(np.abs(gram - np.eye(mode_count(6)))) < 1e-10


def test_basis_restricts_to_spherical_harmonic():
    """On r = 1 the decaying element equals Y_lm"""
    grid = sphere_quadrature(4)
    values, _, _ = basis_table(3, grid.points)
    assert np.allclose(values, sphere_values(3, grid.points), atol=1e-13)


def test_basis_rejects_interior_points():
    """Points inside the unit ball raise DomainError unless within the stencil margin"""
    with pytest.raises(DomainError):
        basis_eval(2, 1, np.array([0.5, 0.0, 0.0]))
    with pytest.raises(DomainError):
        basis_eval(2, 1, np.array([0.0, 0.0, 1.0 - 0.5 * STENCIL_MARGIN]))
    value, _, _ = basis_eval(2, 1, np.array([0.0, 1.0 - 0.5 * STENCIL_MARGIN, 0.0]), strict=False)
    assert np.isfinite(value)


# assembly

def test_unknown_count(system4):
    """L = 4 has 11 * 25 = 275 unknowns and 15 * 81 rows"""
    assert system4.shape == (15 * 81, 275)
    assert len(system4.column_labels) == 275
    assert system4.column_labels[0] == ("h11", 0, 0)
    assert system4.row_labels[-1] == ("gauge_3", 8, 8)


def test_assemble_rejects_low_truncation():
    """L < 2 is a usage error"""
    with pytest.raises(UsageError):
        assemble(1)


def test_low_quadrature_degree_is_raised():
    """A too-low quadrature request is raised to 2L + 8"""
    system = assemble(2, quadrature_degree=4)
    assert system.grid.degree == 12


def test_coupling_bandwidth(system4):
    """Normals couple a column of degree l only to rows with |l - l'| <= 4"""
    assert 2 <= coupling_bandwidth(system4) <= 4


def test_without_removes_block(system4):
    """Dropping a block removes its rows"""
    reduced = system4.without("tau")
    assert reduced.shape == (system4.shape[0] - 3 * 81, system4.shape[1])
    assert "tau_1" not in reduced.conditions
    with pytest.raises(UsageError):
        system4.without("curvature")


def test_blocks_cover_conditions():
    """The condition blocks partition the fifteen conditions"""
    assert sorted(c for block in BLOCKS.values() for c in block) == sorted(CONDITIONS)


# kernel

def test_rigid_vectors_are_annihilated(system4):
    """All ten rigid motions solve the homogeneous system"""
    rigid = rigid_vectors(4, system4.grid)
    assert rigid.shape == (275, 10)
    residual = np.linalg.norm(system4.matrix @ rigid, axis=0) / np.linalg.norm(rigid, axis=0)
    assert np.max(residual) < 1e-10
    assert np.linalg.matrix_rank(rigid) == 10


@pytest.mark.parametrize("lmax", [4, 6])
def test_kernel_is_rigid(lmax, system4, system6):
    """Raw kernel is the 10 rigid motions and the reduced kernel is trivial"""
    system = {4: system4, 6: system6}[lmax]
    report = kernel_check(lmax, system=system)
    assert report.kernel_dim == 10
    assert report.rigid_dim == 10
    assert report.reduced_kernel_dim == 0
    assert report.rigid_residual < 1e-10
    assert report.sigma_min > report.threshold * report.sigma_max
    assert len(report.bottom_singular_values) == 10
    assert report.status == "pass"


@pytest.mark.slow
def test_kernel_band_over_truncations(system4, system6):
    """L = 4, 6, 8 are injective off the rigid span with sigma_min within a factor 2"""
    reports = [kernel_check(4, system=system4), kernel_check(6, system=system6), kernel_check(8)]
    assert reports[2].n_cols == 11 * 81
    assert [r.kernel_dim for r in reports] == [10, 10, 10]
    assert [r.reduced_kernel_dim for r in reports] == [0, 0, 0]
    sigmas = [r.sigma_min for r in reports]
    assert min(sigmas) > 0
    assert max(sigmas) / min(sigmas) < 2
    assert reports[2].sigma_min <= reports[1].sigma_min * (1 + 1e-8)


def test_dropping_mean_curvature_enlarges_kernel(system4):
    """Without the H block a spherically symmetric kernel element appears"""
    report = kernel_check(4, drop=("H",), system=system4)
    assert report.kernel_dim > 10
    assert report.reduced_kernel_dim >= 1
    assert report.status == "fail"


def test_sigma_min_invariant_under_grid_rotation(system4):
    """Rotating the quadrature grid leaves sigma_min unchanged"""
    base = kernel_check(4, system=system4)
    rotated = kernel_check(4, rotation=random_rotation(17))
    assert abs(base.sigma_min - rotated.sigma_min) < 1e-8
    assert abs(base.sigma_max - rotated.sigma_max) < 1e-8


@pytest.mark.parametrize("boundary", ["dirichlet", "neumann"])
def test_harmonic_vector_flat(boundary):
    """The harmonic-vector problem has only the zero solution"""
    report = harmonic_vector_flat(6, boundary=boundary)
    assert report.kernel_dim == 0
    assert report.n_cols == 4 * 49
    if boundary == "dirichlet":
        assert report.sigma_min == pytest.approx(1.0, abs=1e-10)
        assert report.sigma_max == pytest.approx(1.0, abs=1e-10)
    else:
        assert report.sigma_min == pytest.approx(1.0, abs=1e-10)
        assert report.sigma_max == pytest.approx(7.0, abs=1e-10)


def test_harmonic_vector_rejects_unknown_boundary():
    """Only dirichlet and neumann rows exist"""
    with pytest.raises(UsageError):
        harmonic_vector_flat(4, boundary="robin")


# data

def test_data_tensors_are_tangential():
    """Even and odd gamma parts are tracefree and tangential; tau is tangential"""
    perturbation = BoundaryPerturbation(
        lmax=3,
        gamma_prime=[ModeCoefficient(l=3, m=1, value=1.0, part="even"),
                     ModeCoefficient(l=2, m=-2, value=0.5, part="odd")],
        tau_prime=[ModeCoefficient(l=2, m=0, value=1.0, part="even"),
                   ModeCoefficient(l=3, m=2, value=-1.0, part="odd")],
    )
    points = exterior_points(10, seed=3)
    points /= np.linalg.norm(points, axis=-1, keepdims=True)
    data = ambient_data(perturbation, points)
    gamma = np.zeros((10, 3, 3))
    for k, (i, j) in enumerate([(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]):
        gamma[:, i, j] = gamma[:, j, i] = data[:, k]
    assert np.max(np.abs(np.einsum('nij,nj->ni', gamma, points))) < 1e-12
    assert np.max(np.abs(np.einsum('naa->n', gamma))) < 1e-12
    assert np.max(np.abs(np.einsum('ni,ni->n', data[:, 8:11], points))) < 1e-12
    assert np.max(np.abs(data[:, 11:])) == 0.0


def test_low_degree_tensor_modes_are_rejected():
    """Even gamma at l = 1 and tau at l = 0 are invalid input"""
    with pytest.raises(ValueError):
        BoundaryPerturbation(lmax=1, gamma_prime=[ModeCoefficient(l=1, m=0, value=1.0, part="even")])
    with pytest.raises(ValueError):
        BoundaryPerturbation(lmax=0, tau_prime=[ModeCoefficient(l=0, m=0, value=1.0, part="odd")])


def test_load_perturbation_round_trip(tmp_path, sample_data):
    """Written perturbations load back unchanged"""
    path = write_perturbation(sample_data, tmp_path / "data.json")
    assert load_perturbation(path) == sample_data


def test_load_perturbation_errors(tmp_path):
    """Missing, malformed and inconsistent files are usage errors"""
    with pytest.raises(UsageError):
        load_perturbation(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(UsageError):
        load_perturbation(broken)
    inconsistent = tmp_path / "inconsistent.json"
    inconsistent.write_text(json.dumps({"lmax": 0, "H_prime": [{"l": 2, "m": 0, "value": 1.0}]}))
    with pytest.raises(UsageError):
        load_perturbation(inconsistent)


def test_shipped_sample_loads():
    """The repository sample uses degrees 0 and 2 only"""
    perturbation = load_perturbation(SAMPLE_PATH)
    assert {mode.l for _, mode in perturbation.modes()} <= {0, 2}


# solve

def test_zero_data_gives_zero_solution(system4):
    """Zero perturbation has the zero solution"""
    unknowns, report = solve(zero_perturbation(), lmax=4, system=system4)
    assert np.all(unknowns.coefficients == 0.0)
    assert report.coefficients == []
    assert report.status == "pass"


def test_data_degree_headroom(system4):
    """Data of degree above L - 2 is rejected"""
    data = BoundaryPerturbation(lmax=3, H_prime=[ModeCoefficient(l=3, m=0, value=1e-3)])
    with pytest.raises(UsageError):
        solve(data, lmax=4, system=system4)


def test_radial_reference_closed_form():
    """H' = eps is solved by a = b = -eps, c = eps / 2 with no Y or G"""
    eps = 1e-3
    reference = radial_reference(eps)
    assert reference["residual"] < 1e-12
    assert reference["a"] == pytest.approx(-eps, abs=1e-10)
    assert reference["b"] == pytest.approx(-eps, abs=1e-10)
    assert reference["c"] == pytest.approx(0.5 * eps, abs=1e-10)
    assert abs(reference["alpha"]) < 1e-10 and abs(reference["g"]) < 1e-10


def test_spherical_mean_curvature_solve_matches_radial_reference(system4):
    """A pure l = 0 H' perturbation gives the radial solution"""
    eps = 1e-3
    data = BoundaryPerturbation(lmax=0, H_prime=[ModeCoefficient(l=0, m=0, value=eps * SQRT_FOUR_PI)])
    unknowns, report = solve(data, lmax=4, system=system4)
    points = exterior_points(10, seed=9)
    fields = unknowns.fields(points)
    expected = radial_fields_at(radial_reference(eps), points)
    assert np.max(np.abs(fields.h - expected["h"])) < 1e-9
    assert np.max(np.abs(fields.v - expected["v"])) < 1e-9
    assert np.max(np.abs(fields.Y)) < 1e-10
    assert np.max(np.abs(fields.G)) < 1e-10
    assert report.decay_exponents["h11"] == 1
    assert report.decay_exponents["v"] == 1
    assert "h12" not in report.decay_exponents or report.decay_exponents["h12"] == 3


def test_random_solve_residuals(system6, sample_data):
    """Generic l in {0, 2} data: boundary, interior and gauge residuals are small"""
    unknowns, report = solve(sample_data, lmax=6, system=system6)
    assert report.projected_residual < 1e-12
    assert report.boundary_residual < 1e-8
    assert report.interior_residual < 1e-10
    assert report.gauge_residual < 1e-8
    assert report.status == "pass"
    assert set(report.decay_exponents) <= set(COMPONENTS)


@pytest.mark.slow
def test_truncation_stability(system6, sample_data):
    """Coefficients of l <= 2 data change by < 1e-8 from L = 6 to L = 8"""
    coarse, _ = solve(sample_data, lmax=6, system=system6)
    fine, _ = solve(sample_data, lmax=8)
    assert coarse.max_difference(fine) < 1e-8


def test_rotation_equivariance(system4, sample_data):
    """Solving rotated data gives the rotated solution"""
    Q = random_rotation(23)
    unknowns, _ = solve(sample_data, lmax=4, system=system4)
    rotated, _ = solve(rotate_perturbation(sample_data, Q), lmax=4, system=system4)
    assert rotate_unknowns(unknowns, Q).max_difference(rotated) < 1e-8


def test_rotation_round_trip(rng):
    """Rotating by Q then Q^T returns the original coefficients"""
    unknowns = LinearizedUnknowns(lmax=3, coefficients=rng.normal(size=(11, 16)))
    Q = random_rotation(4)
    back = rotate_unknowns(rotate_unknowns(unknowns, Q), Q.T)
    assert back.max_difference(unknowns) < 1e-12


def test_radial_profiles_table(rng):
    """Profiles are a long (r, component, value) table along one ray"""
    unknowns = LinearizedUnknowns(lmax=2, coefficients=rng.normal(size=(11, 9)))
    frame = radial_profiles(unknowns, components=("h11", "G"), radii=[1.0, 2.0, 3.0])
    assert list(frame.columns) == ["r", "component", "value"]
    assert len(frame) == 6
    assert set(frame["component"]) == {"h11", "G"}
    with pytest.raises(ValueError):
        radial_profiles(unknowns, components=("h44",))
