"""
Tests for the finite-difference geometry of stationary fixtures
"""

import numpy as np
import pytest

from geometry import (
    StationaryTriple,
    ProjectionTriple,
    assemble_adm,
    assemble_projection,
    bartnik_data,
    bianchi,
    compare_with_oracle,
    convergence_table,
    curvature,
    delta_star,
    fixture,
    flat_gauge_split,
    geometry_identity_battery,
    lie_alpha_squared,
    linearized_bartnik,
    quotient_bianchi_rhs,
    recompose,
    split_vector,
    time_translate,
    translation_group_membership,
    vacuum_residual,
    verify_transformation_laws,
    verify_translation_invariance,
    verify_vacuum_projection,
)
from geometry.fixtures import kerr_components, schwarzschild_components, sphere_points
from geometry.identities import decaying_vector_field, translation_functions
from geometry.linearized import linearize_numerically, random_quadratic_deformation
from geometry.operators import alpha_squared, horizontal_lift
from utils.errors import (
    CausalityViolationError,
    ExcludedRegionError,
    GeometryError,
    UsageError,
)


@pytest.fixture
def minkowski():
    """Fixture for the flat exterior"""
    return fixture("minkowski_exterior")


@pytest.fixture
def schwarzschild():
    """Fixture for Schwarzschild with m = 1"""
    return fixture("schwarzschild", m=1.0)


@pytest.fixture
def kerr():
    """Fixture for Kerr with m = 1, a = 0.5"""
    return fixture("kerr", m=1.0, a=0.5)


@pytest.fixture
def probe():
    """Fixture for a point well inside every probe annulus"""
    return np.array([2.1, -1.7, 2.9])


# assembly and fixtures

def test_adm_assembly_of_flat_triple():
    """Test (delta, 0, 1) assembles to diag(-1, 1, 1, 1)"""
    triple = StationaryTriple(g=lambda x: np.eye(3), X=lambda x: np.zeros(3), N=lambda x: 1.0)
    metric = assemble_adm(triple, probe_points=[np.array([1.0, 2.0, 3.0])])
    assert np.array_equal(metric.at(np.array([1.0, 2.0, 3.0])), np.diag([-1.0, 1.0, 1.0, 1.0]))


def test_adm_assembly_readback():
    """Test g_00 = -N^2 + |X|^2 and g_0i = X_i for a random constant triple"""
    rng = np.random.default_rng(3)
    A = rng.normal(size=(3, 3))
    g = A @ A.T + 3.0 * np.eye(3)
    X = rng.normal(size=3) * 0.1
    triple = StationaryTriple(g=lambda x: g, X=lambda x: X, N=lambda x: 2.0)
    components = assemble_adm(triple).at(np.ones(3))
    assert components[0, 0] == pytest.approx(-4.0 + X @ g @ X)
    assert np.allclose(components[0, 1:], g @ X)


def test_adm_causality_violation():
    """Test N^2 <= |X|^2 at a probe point raises"""
    triple = StationaryTriple(g=lambda x: np.eye(3), X=lambda x: np.array([2.0, 0.0, 0.0]), N=lambda x: 1.0)
    with pytest.raises(CausalityViolationError):
        assemble_adm(triple, probe_points=[np.array([1.0, 0.0, 0.0])])


def test_projection_assembly_of_flat_triple():
    """Test (1, 0, delta) assembles to Minkowski and u <= 0 is rejected"""
    flat = ProjectionTriple(u=lambda x: 1.0, theta=lambda x: np.zeros(3), g_S=lambda x: np.eye(3))
    assert np.array_equal(assemble_projection(flat).at(np.ones(3)), np.diag([-1.0, 1.0, 1.0, 1.0]))
    collapsed = ProjectionTriple(u=lambda x: 0.0, theta=lambda x: np.zeros(3), g_S=lambda x: np.eye(3))
    with pytest.raises(CausalityViolationError):
        assemble_projection(collapsed, probe_points=[np.ones(3)])


def test_projection_readback_on_kerr(kerr, probe):
    """Test g_0i = -u^2 theta_i and the round trip through both presentations"""
    g = kerr.metric.at(probe)
    u = kerr.projection.u(probe)
    assert np.allclose(g[0, 1:], -u ** 2 * kerr.projection.theta(probe), atol=1e-12)
    assert np.allclose(assemble_projection(kerr.projection).at(probe), g, atol=1e-12)
    assert np.allclose(assemble_adm(kerr.stationary).at(probe), g, atol=1e-12)


def test_kerr_without_spin_is_schwarzschild(probe):
    """Test kerr(1, 0) equals schwarzschild(1) componentwise"""
    for x in (probe, np.array([0.0, 0.0, 4.0]), np.array([3.5, 0.2, -0.1])):
        assert np.allclose(kerr_components(x, 1.0, 0.0), schwarzschild_components(x, 1.0), atol=1e-12)


def test_kerr_has_twist(kerr, schwarzschild, probe):
    """Test theta is nonzero for kerr and zero for schwarzschild"""
    assert np.linalg.norm(kerr.projection.theta(probe)) > 1e-3
    assert np.array_equal(schwarzschild.projection.theta(probe), np.zeros(3))


def test_fixture_usage_errors():
    """Test unknown names and inadmissible parameters are usage errors"""
    with pytest.raises(UsageError):
        fixture("de_sitter")
    with pytest.raises(UsageError):
        fixture("kerr", m=1.0, a=1.0)
    with pytest.raises(UsageError):
        fixture("schwarzschild", m=-1.0)


def test_excluded_region(schwarzschild):
    """Test evaluation inside r = 2m raises"""
    with pytest.raises(ExcludedRegionError):
        schwarzschild.metric.at(np.array([1.5, 0.0, 0.0]))


def test_probe_points_in_annulus(kerr):
    """Test probe points are seeded and lie in the annulus"""
    first = kerr.probe_points(20, seed=5)
    second = kerr.probe_points(20, seed=5)
    inner, outer = kerr.probe_annulus
    assert all(np.array_equal(a, b) for a, b in zip(first, second))
    assert all(inner <= np.linalg.norm(x) <= outer for x in first)


# curvature

def test_minkowski_is_flat(minkowski, probe):
    """Test Gamma = 0 and Ric = 0 on Minkowski"""
    result = curvature(minkowski.metric, probe)
    assert np.max(np.abs(result.christoffel)) < 1e-12
    assert np.max(np.abs(result.ricci)) < 1e-12


def test_schwarzschild_acceleration(schwarzschild, probe):
    """Test Gamma^i_tt = (m / r^3)(1 - 2m / r) x^i"""
    r = np.linalg.norm(probe)
    expected = (1.0 / r ** 3) * (1.0 - 2.0 / r) * probe
    assert np.allclose(curvature(schwarzschild.metric, probe).christoffel[1:, 0, 0], expected, atol=1e-8)


def test_schwarzschild_vacuum(schwarzschild):
    """Test max |Ric| < 1e-6 on Schwarzschild"""
    result = vacuum_residual(schwarzschild.metric, schwarzschild.probe_points(5))
    assert result["pass"]


@pytest.mark.slow
def test_kerr_vacuum(kerr):
    """Test max |Ric| < 1e-6 on Kerr at 20 probe points"""
    result = vacuum_residual(kerr.metric, kerr.probe_points(20))
    assert result["n_points"] == 20
    assert result["max_error"] < 1e-6


@pytest.mark.slow
def test_richardson_convergence(kerr):
    """Test halving the step shrinks the Ricci residual tenfold or hits the floor"""
    table = convergence_table(kerr.metric, sphere_points(6.0, 2, seed=1))
    assert list(table.columns) == ["step", "residual", "ratio", "ok"]
    assert table["ok"].all()


# gauge operators

def test_bianchi_of_metric_vanishes(kerr, probe):
    """Test beta_g g = 0"""
    assert np.max(np.abs(bianchi(kerr.metric, kerr.metric.at, probe))) < 1e-6


def test_alpha_squared_is_bianchi_free(kerr, schwarzschild):
    """Test beta((dt + theta)^2) = 0 on Kerr and Schwarzschild"""
    for fx in (kerr, schwarzschild):
        field = alpha_squared(fx.metric)
        for x in fx.probe_points(3, seed=11):
            assert np.max(np.abs(bianchi(fx.metric, field, x))) < 1e-6


def test_rotation_is_killing(minkowski, probe):
    """Test delta* of a flat rotation generator vanishes"""
    rotation = lambda x: np.array([0.0, -x[1], x[0], 0.0])
    assert np.max(np.abs(delta_star(minkowski.metric, rotation, probe))) < 1e-10


def test_lie_alpha_squared_along_time(kerr, probe):
    """Test L_{d_t} (dt + theta)^2 = 0"""
    blocks = lie_alpha_squared(kerr.metric, lambda x: np.array([1.0, 0.0, 0.0, 0.0]), probe)
    assert abs(blocks["tt"]) < 1e-10
    assert np.max(np.abs(blocks["mixed_T"])) < 1e-10
    assert np.max(np.abs(blocks["TT"])) < 1e-10


def test_lie_alpha_squared_blocks(kerr, probe):
    """Test tt and TT blocks of L_Y (dt + theta)^2 vanish for a generic Y"""
    Y = decaying_vector_field(np.random.default_rng(2))
    blocks = lie_alpha_squared(kerr.metric, Y, probe)
    assert abs(blocks["tt"]) < 1e-8
    assert np.max(np.abs(blocks["TT"])) < 1e-8


def test_split_of_time_vector(kerr, probe):
    """Test d_t splits as (0, -u)"""
    Y_T, Y_perp = split_vector(kerr.metric, lambda x: np.array([1.0, 0.0, 0.0, 0.0]), probe)
    assert np.allclose(Y_T, 0.0)
    assert Y_perp == pytest.approx(-kerr.projection.u(probe))


def test_split_of_horizontal_vector(kerr, probe):
    """Test a horizontal vector splits as (Y, 0) and recomposition round-trips"""
    V = np.array([0.3, -0.2, 0.5])
    Y_T, Y_perp = split_vector(kerr.metric, lambda x: horizontal_lift(kerr.metric, V, x), probe)
    assert np.allclose(Y_T, V)
    assert abs(Y_perp) < 1e-12
    Y = decaying_vector_field(np.random.default_rng(4))
    Y_T, Y_perp = split_vector(kerr.metric, Y, probe)
    assert np.allclose(recompose(kerr.metric, Y_T, Y_perp, probe), Y(probe), atol=1e-12)


@pytest.mark.slow
def test_quotient_operator_matches_spacetime(kerr, schwarzschild):
    """Test the quotient gauge operator against the 4D computation"""
    Y = decaying_vector_field(np.random.default_rng(8))
    for fx in (schwarzschild, kerr):
        result = compare_with_oracle(fx.projection, Y, fx.probe_points(2, seed=13), fx.metric)
        assert result["tangential_error"] < 1e-5
        assert result["derived_normal_error"] < 1e-5


def test_quotient_operator_flat(minkowski, probe):
    """Test on Minkowski both normal forms agree with the flat oracle"""
    Y = decaying_vector_field(np.random.default_rng(9))
    result = compare_with_oracle(minkowski.projection, Y, [probe], minkowski.metric)
    assert result["tangential_error"] < 1e-6
    assert result["derived_normal_error"] < 1e-6
    assert result["printed_normal_error"] < 1e-6


def test_quotient_rhs_forms_on_flat(minkowski, probe):
    """Test with no twist and constant orbit norm the two normal lines coincide"""
    Y = decaying_vector_field(np.random.default_rng(10))
    T_derived, perp_derived = quotient_bianchi_rhs(minkowski.projection, Y, probe)
    T_printed, perp_printed = quotient_bianchi_rhs(minkowski.projection, Y, probe, form="printed")
    assert np.allclose(T_derived, T_printed)
    assert perp_derived == pytest.approx(perp_printed, abs=1e-12)
    with pytest.raises(ValueError):
        quotient_bianchi_rhs(minkowski.projection, Y, probe, form="transposed")


def test_vacuum_projection_flat(minkowski, probe):
    """Test the projection vacuum system is exactly satisfied on Minkowski"""
    residuals = verify_vacuum_projection(minkowski.projection, [probe])
    assert max(residuals.values()) < 1e-12


@pytest.mark.slow
def test_vacuum_projection_kerr(kerr):
    """Test the projection vacuum system on Kerr"""
    residuals = verify_vacuum_projection(kerr.projection, kerr.probe_points(2, seed=17))
    assert max(residuals.values()) < 1e-5


# Bartnik data

def test_bartnik_data_of_flat_sphere(minkowski):
    """Test Minkowski at r = 1 gives (round, 2, 0, 0)"""
    for x in sphere_points(1.0, 5, seed=0):
        data = bartnik_data(minkowski.metric, x)
        assert np.allclose(data.gamma, np.eye(2), atol=1e-12)
        assert data.H == pytest.approx(2.0, abs=1e-8)
        assert abs(data.k) < 1e-12
        assert np.allclose(data.tau, 0.0, atol=1e-12)


def test_bartnik_data_of_static_sphere(schwarzschild):
    """Test Schwarzschild has k = tau = 0 and H = (2/r) sqrt(1 - 2m/r)"""
    r = schwarzschild.boundary_radius
    for x in sphere_points(r, 4, seed=1):
        data = bartnik_data(schwarzschild.metric, x)
        assert abs(data.k) < 1e-12
        assert np.allclose(data.tau, 0.0, atol=1e-12)
        assert data.H == pytest.approx(2.0 / r * np.sqrt(1.0 - 2.0 / r), abs=1e-8)


def test_trivial_translation(kerr, probe):
    """Test f = 0 leaves the metric unchanged with (a, b) = (1, 0)"""
    translation = time_translate(kerr.metric, lambda x: 0.0)
    x = sphere_points(kerr.boundary_radius, 1, seed=2)[0]
    assert translation.a(x) == pytest.approx(1.0)
    assert translation.b(x) == pytest.approx(0.0)
    assert np.allclose(translation.pulled.at(probe), kerr.metric.at(probe))


def test_translation_must_fix_boundary(kerr):
    """Test f nonzero on the boundary is rejected"""
    with pytest.raises(GeometryError):
        time_translate(kerr.metric, lambda x: 0.1)


def test_translation_invariance(kerr):
    """Test Bartnik data are unchanged when f = n(f) = 0 on the boundary"""
    _, flat_part = translation_functions(kerr.boundary_radius)
    result = verify_translation_invariance(kerr.metric, flat_part, count=6, seed=3)
    assert result["pass"]


@pytest.mark.slow
def test_transformation_laws_on_kerr():
    """Test the translated data follow the (a, b) laws on kerr(1, 0.3)"""
    fx = fixture("kerr", m=1.0, a=0.3)
    with_normal, _ = translation_functions(fx.boundary_radius)
    result = verify_transformation_laws(fx.metric, with_normal, count=6, seed=4)
    assert result["max_error"] < 1e-5
    assert result["a2_minus_b2"] < 1e-10


def test_flat_translation_keeps_round_metric(minkowski):
    """Test gamma stays round under a translation of Minkowski"""
    with_normal, _ = translation_functions(1.0, amplitude=0.2)
    translation = time_translate(minkowski.metric, with_normal)
    for x in sphere_points(1.0, 4, seed=5):
        assert np.allclose(bartnik_data(translation.pulled, x).gamma, np.eye(2), atol=1e-12)


def test_translation_group_membership(kerr):
    """Test membership requires n(f) = 0 and does not depend on the normal used"""
    with_normal, flat_part = translation_functions(kerr.boundary_radius)
    inside = translation_group_membership(kerr.metric, flat_part, count=8, seed=6)
    outside = translation_group_membership(kerr.metric, with_normal, count=8, seed=6)
    assert inside["member"] and inside["metric_independent"]
    assert not outside["member"] and outside["metric_independent"]


# flat background

def test_flat_gauge_split():
    """Test the split form of beta at the flat background on 20 deformations"""
    rng = np.random.default_rng(10)
    for _ in range(20):
        h4 = random_quadratic_deformation(rng)
        x = rng.uniform(-2.0, 2.0, size=3) + np.array([0.0, 0.0, 3.0])
        result = flat_gauge_split(h4, x)
        assert np.max(np.abs(result["direct"] - result["split"])) < 1e-8


def test_linearized_data_match_numeric_linearization():
    """Test the closed-form linearized Bartnik data against an eps-difference"""
    rng = np.random.default_rng(12)
    h4 = random_quadratic_deformation(rng, scale=0.3)
    for x in sphere_points(1.0, 3, seed=7):
        closed = linearized_bartnik(h4, x)
        numeric = linearize_numerically(h4, x)
        assert max(closed.difference(numeric).values()) < 1e-5


# battery

@pytest.mark.slow
def test_battery_on_minkowski():
    """Test every identity holds on the flat exterior"""
    checks = geometry_identity_battery("minkowski", probe_count=6)
    assert {c["status"] for c in checks} <= {"pass", "info"}
    assert {"vacuum_ricci", "killing_split", "transformation_laws"} <= {c["name"] for c in checks}


@pytest.mark.slow
def test_battery_on_kerr():
    """Test every identity holds on Kerr"""
    checks = geometry_identity_battery("kerr", m=1.0, a=0.5, probe_count=6)
    failing = [c for c in checks if c["status"] == "fail"]
    assert failing == []
