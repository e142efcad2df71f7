"""
Identity battery: every pointwise tensor identity checked on one fixture

Each check returns a plain dict
    {"name", "identity", "status", "max_error", "tolerance", "n_points"}
with status "pass", "fail" or "info" (reported, not asserted).
"""

from typing import Any, Callable, Dict, List, Optional

import numpy as np

from config.settings import settings
from geometry.adm import verify_vacuum_adm
from geometry.bartnik import (
    bartnik_data,
    boundary_points,
    translation_group_membership,
    verify_transformation_laws,
    verify_translation_invariance,
)
from geometry.calculus import LeviCivita
from geometry.convergence import convergence_table
from geometry.curvature import vacuum_residual
from geometry.fixtures import Fixture, fixture, sphere_points
from geometry.linearized import flat_split_residual, random_quadratic_deformation
from geometry.metric import assemble_adm, assemble_projection, projection_to_stationary
from geometry.operators import (
    alpha_squared,
    bianchi,
    delta_star_blocks,
    lie_alpha_squared,
    recompose,
    rough_laplacian,
    split_vector,
    two_beta_delta_star,
)
from geometry.quotient import QuotientGeometry, compare_with_oracle, verify_vacuum_projection
from utils.logger import logger
from utils.profiler import time_function

Field = Callable[[np.ndarray], np.ndarray]
HEAVY_POINTS = 4


def decaying_vector_field(rng: np.random.Generator, scale: float = 1.0) -> Field:
    """Y^mu = (c^mu + B^mu . x/r) / r, t-independent"""
    c = rng.normal(size=4) * scale
    B = rng.normal(size=(4, 3)) * scale

    def field(x):
        r = float(np.linalg.norm(x))
        return (c + B @ (x / r)) / r

    return field


def translation_functions(radius: float, amplitude: float = 0.05):
    """(f with n(f) != 0, f with f = df = 0) on the sphere |x| = radius"""

    def normal_part(x):
        r = float(np.linalg.norm(x))
        return amplitude * (r - radius) * x[2] / r

    def flat_part(x):
        r = float(np.linalg.norm(x))
        return amplitude * (r - radius) ** 2 * x[2] / r

    return normal_part, flat_part


def make_check(name: str, identity: str, max_error: float, tolerance: float, n_points: int,
               status: Optional[str] = None) -> Dict[str, Any]:
    if status is None:
        status = "pass" if np.isfinite(max_error) and max_error < tolerance else "fail"
    return {
        "name": name,
        "identity": identity,
        "status": status,
        "max_error": float(max_error),
        "tolerance": float(tolerance),
        "n_points": int(n_points),
    }


def _max_abs(*arrays) -> float:
    return max(float(np.max(np.abs(np.asarray(a)))) for a in arrays)


def check_assembly(fx: Fixture, points: List[np.ndarray]) -> Dict[str, Any]:
    from_projection = assemble_projection(fx.projection, probe_points=points)
    from_adm = assemble_adm(fx.stationary, probe_points=points)
    via_projection = projection_to_stationary(fx.projection)
    worst = 0.0
    for x in points:
        g = fx.metric.at(x)
        worst = max(
            worst,
            _max_abs(from_projection.at(x) - g, from_adm.at(x) - g),
            _max_abs(via_projection.g(x) - fx.stationary.g(x), via_projection.X(x) - fx.stationary.X(x)),
            abs(via_projection.N(x) - fx.stationary.N(x)),
        )
    return make_check("assembly_roundtrip", "lapse-shift and projection forms agree", worst,
                      settings.TOL_INTERIOR, len(points))


def check_gauge_of_metric(fx: Fixture, points: List[np.ndarray]) -> Dict[str, Any]:
    worst = max(_max_abs(bianchi(fx.metric, fx.metric.at, x)) for x in points)
    return make_check("bianchi_of_metric", "beta_g g = 0", worst, settings.TOL_VACUUM, len(points))


def check_alpha_squared(fx: Fixture, points: List[np.ndarray]) -> Dict[str, Any]:
    field = alpha_squared(fx.metric)
    worst = max(_max_abs(bianchi(fx.metric, field, x)) for x in points)
    return make_check("bianchi_free_alpha_squared", "beta_g (dt + theta)^2 = 0", worst,
                      settings.TOL_VACUUM, len(points))


def check_split(fx: Fixture, Y: Field, points: List[np.ndarray]) -> Dict[str, Any]:
    worst = 0.0
    for x in points:
        Y_T, Y_perp = split_vector(fx.metric, Y, x)
        worst = max(worst, _max_abs(recompose(fx.metric, Y_T, Y_perp, x) - Y(x)))
        gx = fx.metric.at(x)
        lifted = recompose(fx.metric, Y_T, 0.0, x)
        worst = max(worst, abs(float(gx[0] @ lifted)))
    return make_check("killing_split", "Y = Y^T - (Y^perp / u) d_t", worst, settings.TOL_INTERIOR, len(points))


def check_lie_alpha_squared(fx: Fixture, Y: Field, points: List[np.ndarray]) -> Dict[str, Any]:
    geometry = QuotientGeometry(fx.projection, fx.metric.step, fx.metric.levels)
    worst = 0.0
    for x in points:
        blocks = lie_alpha_squared(fx.metric, Y, x)
        pieces = geometry._pieces(Y, x)
        expected = pieces["V"](x) @ pieces["F"] - pieces["dpsi"]
        worst = max(worst, abs(blocks["tt"]), _max_abs(blocks["TT"], blocks["mixed_T"] - expected))
    return make_check("lie_alpha_squared", "L_Y (dt + theta)^2 blocks", worst, settings.TOL_VACUUM, len(points))


def check_delta_star_blocks(fx: Fixture, Y: Field, points: List[np.ndarray]) -> Dict[str, Any]:
    geometry = QuotientGeometry(fx.projection, fx.metric.step, fx.metric.levels)
    worst = 0.0
    for x in points:
        blocks = delta_star_blocks(fx.metric, Y, x)
        s = geometry._pieces(Y, x)
        u, V = s["u"], s["V"](x)
        tt = -u * float(V @ s["du"])
        mixed = -0.5 * u ** 2 * (V @ s["F"]) + 0.5 * u ** 2 * s["dpsi"]
        TT = 0.5 * geometry.calculus.lie_tensor(fx.projection.g_S, s["V"], x)
        worst = max(worst, abs(blocks["tt"] - tt), _max_abs(blocks["mixed_T"] - mixed, blocks["TT"] - TT))
    return make_check("delta_star_blocks", "delta* Y in the Killing frame", worst, settings.TOL_VACUUM, len(points))


def check_quotient_operator(fx: Fixture, Y: Field, points: List[np.ndarray]) -> List[Dict[str, Any]]:
    result = compare_with_oracle(fx.projection, Y, points, fx.metric)
    derived = max(result["tangential_error"], result["derived_normal_error"])
    return [
        make_check("quotient_gauge_operator", "quotient form of nabla* nabla Y", derived,
                   settings.TOL_IDENTITY, result["n_points"]),
        make_check("quotient_gauge_printed", "printed normal line against nabla* nabla Y",
                   result["printed_normal_error"], settings.TOL_IDENTITY, result["n_points"], status="info"),
    ]


def check_ricci_drop(fx: Fixture, Y: Field, points: List[np.ndarray]) -> Dict[str, Any]:
    worst = max(
        _max_abs(two_beta_delta_star(fx.metric, Y, x) - rough_laplacian(fx.metric, Y, x)) for x in points
    )
    return make_check("two_beta_delta_star", "2 beta delta* Y = nabla* nabla Y in vacuum", worst,
                      settings.TOL_IDENTITY, len(points))


def check_bartnik_reference(fx: Fixture, count: int, seed: int) -> Dict[str, Any]:
    points = boundary_points(fx.metric, count, seed)
    worst = 0.0
    for x in points:
        data = bartnik_data(fx.metric, x)
        if fx.name == "minkowski_exterior":
            worst = max(worst, _max_abs(data.gamma - np.eye(2), data.tau), abs(data.H - 2.0), abs(data.k))
        elif fx.name == "schwarzschild":
            r = fx.boundary_radius
            H = 2.0 / r * np.sqrt(1.0 - 2.0 * fx.mass / r)
            worst = max(worst, _max_abs(data.gamma - np.eye(2), data.tau), abs(data.k), abs(data.H - H))
        else:
            finite = all(np.all(np.isfinite(v)) for v in (data.gamma, data.H, data.k, data.tau))
            worst = max(worst, 0.0 if finite else np.inf)
    return make_check("bartnik_reference", "Bartnik data of the fixture", worst, settings.TOL_INVARIANCE, len(points))


def check_translations(fx: Fixture, count: int, seed: int) -> List[Dict[str, Any]]:
    with_normal, without_normal = translation_functions(fx.boundary_radius)
    laws = verify_transformation_laws(fx.metric, with_normal, count, seed)
    invariance = verify_translation_invariance(fx.metric, without_normal, count, seed)
    inside = translation_group_membership(fx.metric, without_normal, count, seed)
    outside = translation_group_membership(fx.metric, with_normal, count, seed)
    membership_ok = (
        inside["member"] and not outside["member"]
        and inside["metric_independent"] and outside["metric_independent"]
    )
    return [
        make_check("transformation_laws", "Bartnik data under a boundary time translation",
                   laws["max_error"], settings.TOL_IDENTITY, laws["n_points"]),
        make_check("translation_invariance", "Bartnik data fixed when f = n(f) = 0",
                   invariance["max_error"], settings.TOL_INVARIANCE, invariance["n_points"]),
        make_check("translation_group", "membership independent of the normal",
                   inside["max_normal_derivative"], 1e-8, count,
                   status="pass" if membership_ok else "fail"),
    ]


def check_flat_split(seed: int) -> Dict[str, Any]:
    rng = np.random.default_rng(seed)
    fields = [random_quadratic_deformation(rng) for _ in range(3)]
    points = [rng.uniform(-2.0, 2.0, size=3) + np.array([0.0, 0.0, 3.0]) for _ in range(4)]
    result = flat_split_residual(fields, points)
    return make_check("flat_gauge_split", "beta at the flat background split into (Y, h, v)",
                      result["max_error"], settings.TOL_FLAT_SPLIT, result["n_points"])


@time_function
def geometry_identity_battery(name: str, seed: Optional[int] = None, m: Optional[float] = None,
                              a: Optional[float] = None, probe_count: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    Run every geometry identity on one fixture

    Args:
        name: Fixture name
        seed: Seed for probe points and random vector fields
        m: Mass parameter
        a: Spin parameter (kerr only)
        probe_count: Points for the inexpensive checks

    Returns:
        List of check dicts
    """
    seed = settings.SEED if seed is None else seed
    fx = fixture(name, m, a)
    points = fx.probe_points(probe_count, seed)
    heavy = points[:HEAVY_POINTS]
    Y = decaying_vector_field(np.random.default_rng(seed))
    logger.info(f"🌀 Geometry battery on {fx.name} ({len(points)} probe points, seed {seed})")

    checks: List[Dict[str, Any]] = []
    vacuum = vacuum_residual(fx.metric, points)
    checks.append(make_check("vacuum_ricci", "Ric = 0", vacuum["max_error"], vacuum["tolerance"], vacuum["n_points"]))
    checks.append(check_assembly(fx, points))
    checks.append(check_gauge_of_metric(fx, heavy))
    checks.append(check_alpha_squared(fx, points))
    checks.append(check_split(fx, Y, points))
    checks.append(check_lie_alpha_squared(fx, Y, heavy))
    checks.append(check_delta_star_blocks(fx, Y, heavy))
    checks.extend(check_quotient_operator(fx, Y, heavy))
    checks.append(check_ricci_drop(fx, Y, heavy[:2]))

    projection = verify_vacuum_projection(fx.projection, heavy, fx.metric.step, fx.metric.levels)
    checks.append(make_check("vacuum_projection", "projection-form vacuum system",
                             max(projection.values()), settings.TOL_IDENTITY, len(heavy)))
    adm = verify_vacuum_adm(fx.metric, heavy)
    checks.append(make_check("vacuum_adm", "lapse-shift vacuum system",
                             max(adm["hamiltonian"], adm["momentum"], adm["evolution"]),
                             settings.TOL_IDENTITY, adm["n_points"]))

    checks.append(check_bartnik_reference(fx, 8, seed))
    checks.extend(check_translations(fx, 8, seed))
    checks.append(check_flat_split(seed))

    # well outside the excluded ball so the widest stencil stays admissible
    table = convergence_table(fx.metric, sphere_points(fx.probe_annulus[1] - 1.0, 3, seed))
    checks.append(make_check("fd_convergence", "Richardson convergence of Ric",
                             float(table["residual"].iloc[-1]), settings.TOL_VACUUM, len(table),
                             status="pass" if bool(table["ok"].all()) else "fail"))
    checks[-1]["table"] = table.to_dict("records")

    failed = [c["name"] for c in checks if c["status"] == "fail"]
    if failed:
        logger.error(f"❌ {fx.name}: failing identities {failed}")
    else:
        logger.info(f"✅ {fx.name}: all {len(checks)} identities hold")
    return checks


__all__ = [
    "decaying_vector_field",
    "translation_functions",
    "make_check",
    "geometry_identity_battery",
]
