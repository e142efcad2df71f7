"""
Gauge and deformation operators on stationary 4-metrics

    beta_g h   = delta_g h + 1/2 d tr_g h
    delta*_g Y = 1/2 L_Y g

plus the splitting Y = Y^T - (Y^perp / u) d_t along the Killing field and the
Lie derivative of alpha^2 = (dt + theta)^2.
"""

from typing import Callable, Dict, Tuple

import numpy as np

from geometry.calculus import LeviCivita
from geometry.metric import Metric4

Field = Callable[[np.ndarray], np.ndarray]


def bianchi(g_ref: Metric4, h: Field, x: np.ndarray) -> np.ndarray:
    """beta_{g_ref} h at x as a covector (index 0 is dt)"""
    calculus = LeviCivita.of(g_ref)
    return calculus.delta(h, x) + 0.5 * calculus.d(calculus.trace(h), x)


def delta_star(g: Metric4, Y: Field, x: np.ndarray) -> np.ndarray:
    """1/2 L_Y g at x"""
    return 0.5 * LeviCivita.of(g).lie_tensor(g.at, Y, x)


def delta_star_field(g: Metric4, Y: Field) -> Field:
    return lambda p: delta_star(g, Y, p)


def two_beta_delta_star(g: Metric4, Y: Field, x: np.ndarray) -> np.ndarray:
    """2 beta_g delta*_g Y as a vector (index raised with g)"""
    covector = 2.0 * bianchi(g, delta_star_field(g, Y), x)
    return g.inverse(x) @ covector


def rough_laplacian(g: Metric4, Y: Field, x: np.ndarray) -> np.ndarray:
    """nabla* nabla Y = -tr nabla^2 Y"""
    return LeviCivita.of(g).rough_laplacian(Y, x)


def ricci_of_vector(g: Metric4, Y: Field, x: np.ndarray) -> np.ndarray:
    """Ric(Y)^a = g^ab Ric_bc Y^c"""
    return g.inverse(x) @ LeviCivita.of(g).ricci(x) @ np.asarray(Y(x))


# Killing split

def orbit_norm(g: Metric4, x: np.ndarray) -> float:
    return float(np.sqrt(-g.at(x)[0, 0]))


def split_vector(g: Metric4, Y: Field, x: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Y = Y^T - (Y^perp / u) d_t with <Y^T, d_t> = 0 and Y^perp = u^-1 <Y, d_t>

    Returns:
        (spatial components of Y^T, i.e. its projection to the quotient, Y^perp)
    """
    gx = g.at(x)
    Yx = np.asarray(Y(x), dtype=float)
    u = float(np.sqrt(-gx[0, 0]))
    return Yx[1:].copy(), float(gx[0] @ Yx) / u


def horizontal_lift(g: Metric4, V: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(-theta(V), V), the lift orthogonal to d_t"""
    gx = g.at(x)
    theta = gx[0, 1:] / gx[0, 0]
    return np.concatenate([[-theta @ V], V])


def recompose(g: Metric4, Y_T: np.ndarray, Y_perp: float, x: np.ndarray) -> np.ndarray:
    """Inverse of ``split_vector``"""
    lifted = horizontal_lift(g, np.asarray(Y_T, dtype=float), x)
    lifted[0] -= Y_perp / orbit_norm(g, x)
    return lifted


def killing_frame(g: Metric4, x: np.ndarray) -> np.ndarray:
    """Rows: d_t followed by the horizontal lifts of the coordinate vectors"""
    return np.vstack([[1.0, 0.0, 0.0, 0.0]] + [horizontal_lift(g, e, x) for e in np.eye(3)])


def alpha_squared(g: Metric4) -> Field:
    """(dt + theta)^2 with theta_i = -g_0i / u^2"""

    def field(x):
        gx = g.at(x)
        alpha = np.concatenate([[1.0], gx[0, 1:] / gx[0, 0]])
        return np.outer(alpha, alpha)

    return field


def lie_alpha_squared(g: Metric4, Y: Field, x: np.ndarray) -> Dict[str, np.ndarray]:
    """
    L_Y (dt + theta)^2 in the Killing frame

    Returns:
        {"tt": scalar, "mixed_T": 1-form on the quotient, "TT": 2-tensor on the quotient}
    """
    lie = LeviCivita.of(g).lie_tensor(alpha_squared(g), Y, x)
    frame = killing_frame(g, x)
    blocks = frame @ lie @ frame.T
    return {"tt": float(blocks[0, 0]), "mixed_T": blocks[0, 1:].copy(), "TT": blocks[1:, 1:].copy()}


def delta_star_blocks(g: Metric4, Y: Field, x: np.ndarray) -> Dict[str, np.ndarray]:
    """delta* Y in the Killing frame, same block layout as ``lie_alpha_squared``"""
    frame = killing_frame(g, x)
    blocks = frame @ delta_star(g, Y, x) @ frame.T
    return {"tt": float(blocks[0, 0]), "mixed_T": blocks[0, 1:].copy(), "TT": blocks[1:, 1:].copy()}


__all__ = [
    "bianchi",
    "delta_star",
    "delta_star_field",
    "two_beta_delta_star",
    "rough_laplacian",
    "ricci_of_vector",
    "orbit_norm",
    "split_vector",
    "horizontal_lift",
    "recompose",
    "killing_frame",
    "alpha_squared",
    "lie_alpha_squared",
    "delta_star_blocks",
]
