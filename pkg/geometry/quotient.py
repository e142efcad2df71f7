"""
Projection formalism on the orbit space S of the Killing field

For g = -u^2 (dt + theta)^2 + g_S, write F = d theta, psi = Y^perp / u and
V = Y^T. In vacuum the tangential and normal parts of nabla* nabla Y are

    Z^T      = D*D V + u^-2 V(u) grad u - u^-1 D_{grad u} V
               + 1/2 u^2 F(F(V)) - u^2 F(grad psi)
    -Z^perp  = -u Delta psi + 3 <grad psi, grad u> + u F_ab D^a V^b

with F(W)_k = W^a F_ak raised by g_S. The vacuum system itself is written
with the twist omega = -1/2 u^3 *F.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from config.settings import settings
from geometry.calculus import LeviCivita
from geometry.metric import Metric4, ProjectionTriple, assemble_projection
from geometry.operators import rough_laplacian, split_vector
from utils.logger import logger
from utils.profiler import time_function

Field = Callable[[np.ndarray], np.ndarray]
FORMS = ("derived", "printed")

# Levi-Civita symbol
EPSILON = np.zeros((3, 3, 3))
EPSILON[0, 1, 2] = EPSILON[1, 2, 0] = EPSILON[2, 0, 1] = 1.0
EPSILON[0, 2, 1] = EPSILON[2, 1, 0] = EPSILON[1, 0, 2] = -1.0


@dataclass(frozen=True)
class QuotientData:
    """Twist 1-form omega and F = d theta at one point"""

    twist: np.ndarray
    dtheta: np.ndarray


class QuotientGeometry:
    """Finite-difference calculus of (u, theta, g_S)"""

    def __init__(self, p: ProjectionTriple, step: Optional[float] = None, levels: Optional[int] = None):
        self.p = p
        self.calculus = LeviCivita(p.g_S, 3, step, levels)

    def dtheta(self, x: np.ndarray) -> np.ndarray:
        d = self.calculus.d(self.p.theta, x)
        return d - d.T

    def hodge(self, F: np.ndarray, x: np.ndarray) -> np.ndarray:
        """(*F)_i = 1/2 sqrt(det g) eps_ijk F^jk"""
        g = np.asarray(self.p.g_S(x))
        g_inv = np.linalg.inv(g)
        raised = g_inv @ F @ g_inv
        return 0.5 * np.sqrt(np.linalg.det(g)) * np.einsum('ijk,jk->i', EPSILON, raised)

    def twist(self, x: np.ndarray) -> np.ndarray:
        return -0.5 * self.p.u(x) ** 3 * self.hodge(self.dtheta(x), x)

    def quotient_data(self, x: np.ndarray) -> QuotientData:
        return QuotientData(twist=self.twist(x), dtheta=self.dtheta(x))

    def norm_squared(self, F: np.ndarray, x: np.ndarray) -> float:
        """|F|^2 = 1/2 F_ab F^ab"""
        g_inv = self.calculus.inverse(x)
        return 0.5 * float(np.einsum('ab,ac,bd,cd->', F, g_inv, g_inv, F))

    def _pieces(self, Y: Field, x: np.ndarray) -> Dict[str, Any]:
        p, calculus = self.p, self.calculus
        V = lambda q: np.asarray(Y(q), dtype=float)[1:]
        # psi = <Y, d_t> / u^2 = -(Y^0 + theta(V))
        psi = lambda q: -float(np.asarray(Y(q))[0] + np.asarray(p.theta(q)) @ V(q))
        return {
            "V": V,
            "psi": psi,
            "u": p.u(x),
            "du": calculus.d(p.u, x),
            "dpsi": calculus.d(psi, x),
            "g_inv": calculus.inverse(x),
            "F": self.dtheta(x),
            "DV": calculus.nabla_vector(V, x),
        }

    def tangential(self, Y: Field, x: np.ndarray) -> np.ndarray:
        """Z^T as a vector on S"""
        s = self._pieces(Y, x)
        u, g_inv, F = s["u"], s["g_inv"], s["F"]
        V = s["V"](x)
        grad_u = g_inv @ s["du"]
        grad_psi = g_inv @ s["dpsi"]
        F_of_V = g_inv @ (V @ F)
        return (
            self.calculus.rough_laplacian(s["V"], x)
            + (V @ s["du"]) / u ** 2 * grad_u
            - (grad_u @ s["DV"]) / u
            + 0.5 * u ** 2 * g_inv @ (F_of_V @ F)
            - u ** 2 * g_inv @ (grad_psi @ F)
        )

    def normal(self, Y: Field, x: np.ndarray, form: str = "derived") -> float:
        """Z^perp, from the derived line or the printed variant"""
        if form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}, got {form!r}")
        s = self._pieces(Y, x)
        u, g_inv, F = s["u"], s["g_inv"], s["F"]
        common = (
            -u * self.calculus.laplacian(s["psi"], x)
            + 3.0 * float(s["dpsi"] @ g_inv @ s["du"])
            + u * float(np.einsum('ab,ac,cb->', F, g_inv, s["DV"]))
        )
        if form == "derived":
            minus_perp = common
        else:
            Y_perp = u * s["psi"](x)
            grad_u = g_inv @ s["du"]
            minus_perp = (
                common
                - 0.25 * u ** 2 * Y_perp * self.norm_squared(F, x)
                - float(grad_u @ F @ s["V"](x))
            )
        return -minus_perp


def quotient_bianchi_rhs(p: ProjectionTriple, Y: Field, x: np.ndarray, form: str = "derived",
                         step: Optional[float] = None, levels: Optional[int] = None) -> Tuple[np.ndarray, float]:
    """
    Both components of 2 beta delta* Y = nabla* nabla Y computed on the quotient

    Args:
        p: Projection data of a vacuum metric
        Y: t-independent 4-vector field
        x: Point
        form: "derived" or "printed" normal line

    Returns:
        (T_part, perp_part)
    """
    geometry = QuotientGeometry(p, step, levels)
    return geometry.tangential(Y, x), geometry.normal(Y, x, form)


def spacetime_oracle(g: Metric4, Y: Field, x: np.ndarray) -> Tuple[np.ndarray, float]:
    """nabla* nabla Y computed in 4D and split along d_t"""
    Z = rough_laplacian(g, Y, x)
    return split_vector(g, lambda q: Z, x)


@time_function
def compare_with_oracle(p: ProjectionTriple, Y: Field, points: Iterable[np.ndarray],
                        g: Optional[Metric4] = None) -> Dict[str, Any]:
    """
    Max residual of both quotient forms against the 4D oracle

    Returns:
        {"n_points", "tangential_error", "derived_normal_error", "printed_normal_error"}
    """
    g = assemble_projection(p) if g is None else g
    geometry = QuotientGeometry(p, g.step, g.levels)
    worst = {"tangential_error": 0.0, "derived_normal_error": 0.0, "printed_normal_error": 0.0}
    count = 0
    for x in points:
        oracle_T, oracle_perp = spacetime_oracle(g, Y, x)
        worst["tangential_error"] = max(
            worst["tangential_error"], float(np.max(np.abs(geometry.tangential(Y, x) - oracle_T)))
        )
        for form in FORMS:
            key = f"{form}_normal_error"
            worst[key] = max(worst[key], abs(geometry.normal(Y, x, form) - oracle_perp))
        count += 1
    if worst["printed_normal_error"] > settings.TOL_IDENTITY:
        logger.info(f"⚠️ Printed normal line differs from the 4D oracle by {worst['printed_normal_error']:.3e}")
    return {"n_points": count, **worst}


@time_function
def verify_vacuum_projection(p: ProjectionTriple, points: Iterable[np.ndarray],
                             step: Optional[float] = None, levels: Optional[int] = None) -> Dict[str, float]:
    """
    Residuals of the projection-form vacuum system and its consequences

    Returns:
        Max residual per equation: ricci, laplace_u, twist_divergence, twist_closed,
        dtheta_divergence, laplace_u_dtheta, killing_acceleration
    """
    geometry = QuotientGeometry(p, step, levels)
    calculus = geometry.calculus
    g4 = assemble_projection(p, step=calculus.step, levels=calculus.levels)
    spacetime = LeviCivita.of(g4)
    residuals = {
        "ricci": 0.0,
        "laplace_u": 0.0,
        "twist_divergence": 0.0,
        "twist_closed": 0.0,
        "dtheta_divergence": 0.0,
        "laplace_u_dtheta": 0.0,
        "killing_acceleration": 0.0,
    }

    def update(name: str, value) -> None:
        residuals[name] = max(residuals[name], float(np.max(np.abs(value))))

    for x in points:
        u = p.u(x)
        g_S = np.asarray(p.g_S(x))
        g_inv = calculus.inverse(x)
        du = calculus.d(p.u, x)
        omega = geometry.twist(x)
        omega_sq = float(omega @ g_inv @ omega)
        F = geometry.dtheta(x)

        update("ricci", calculus.ricci(x) - calculus.hessian(p.u, x) / u
               - 2.0 / u ** 4 * (np.outer(omega, omega) - omega_sq * g_S))
        laplace_u = calculus.laplacian(p.u, x)
        update("laplace_u", laplace_u - 2.0 * omega_sq / u ** 3)

        D_omega = calculus.d(geometry.twist, x) - np.einsum('cab,c->ab', calculus.christoffel(x), omega)
        delta_omega = -float(np.einsum('ab,ab', g_inv, D_omega))
        update("twist_divergence", delta_omega + 3.0 / u * float(du @ g_inv @ omega))
        update("twist_closed", D_omega - D_omega.T)

        DF = calculus.nabla_tensor(geometry.dtheta, x)
        delta_F = -np.einsum('ba,bak->k', g_inv, DF)
        update("dtheta_divergence", u * delta_F - 3.0 * (g_inv @ du) @ F)
        update("laplace_u_dtheta", laplace_u - 0.5 * u ** 3 * geometry.norm_squared(F, x))

        grad_u = g_inv @ du
        lifted = np.concatenate([[-np.asarray(p.theta(x)) @ grad_u], grad_u])
        update("killing_acceleration", spacetime.christoffel(x)[:, 0, 0] - u * lifted)

    logger.info(f"🌀 Projection vacuum residuals: {residuals}")
    return residuals


__all__ = [
    "FORMS",
    "QuotientData",
    "QuotientGeometry",
    "quotient_bianchi_rhs",
    "spacetime_oracle",
    "compare_with_oracle",
    "verify_vacuum_projection",
]
