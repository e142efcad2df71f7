"""
Linearization at the flat exterior background (g_0, X = 0, N = 1)

A time-independent deformation h4 of the Minkowski metric is split as
h = h4_ij, Y_i = h4_0i, v = -h4_00 / 2. On the sphere |x| = r with outward
normal n and tangent frame (t1, t2):

    gamma' = h(t_a, t_b)
    H'     = -(div h)(n) + 1/2 n(tr h) + 1/2 n^i n^j n(h_ij) - tr h / r + 2 h_nn / r
    k'     = -(div Y - <D_n Y, n>)
    tau'_a = -(delta* Y)(n, t_a)
"""

from typing import Any, Callable, Dict, Iterable, Optional

import numpy as np

from geometry.bartnik import BartnikData, bartnik_data, tangent_frame
from geometry.finite_difference import partials
from geometry.fixtures import minkowski_components
from geometry.metric import Metric4
from geometry.operators import bianchi

Field = Callable[[np.ndarray], np.ndarray]


def split_deformation(h4: np.ndarray):
    """(h, Y, v) from a 4x4 deformation"""
    return h4[1:, 1:], h4[0, 1:], -0.5 * h4[0, 0]


def linearized_bartnik(h4: Field, x: np.ndarray, step: Optional[float] = None,
                       levels: Optional[int] = None) -> BartnikData:
    """Derivative of the Bartnik data of Minkowski + eps h4 at eps = 0"""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    n = x / r
    frame = tangent_frame(x)
    h, Y, _ = split_deformation(np.asarray(h4(x), dtype=float))
    d4 = partials(h4, x, step, levels)
    dh, dY = d4[:, 1:, 1:], d4[:, 0, 1:]

    div_h = np.einsum('iij->j', dh)
    d_trace = np.einsum('kii->k', dh)
    h_nn = float(n @ h @ n)
    H = (
        -float(div_h @ n)
        + 0.5 * float(d_trace @ n)
        + 0.5 * float(np.einsum('i,j,k,kij', n, n, n, dh))
        - float(np.trace(h)) / r
        + 2.0 * h_nn / r
    )
    k = -(float(np.trace(dY)) - float(n @ dY @ n))
    sym_dY = 0.5 * (dY + dY.T)
    tau = -(frame @ (sym_dY @ n))
    return BartnikData(point=x, gamma=frame @ h @ frame.T, H=H, k=k, tau=tau)


def perturbed_minkowski(h4: Field, eps: float) -> Metric4:
    return Metric4(
        name=f"minkowski+{eps:g}h",
        components=lambda p: minkowski_components(p) + eps * np.asarray(h4(p), dtype=float),
        boundary_radius=1.0,
    )


def linearize_numerically(h4: Field, x: np.ndarray, eps: float = 1e-4) -> BartnikData:
    """Central difference in eps of ``bartnik_data`` along Minkowski + eps h4"""
    plus = bartnik_data(perturbed_minkowski(h4, eps), x)
    minus = bartnik_data(perturbed_minkowski(h4, -eps), x)
    scale = 0.5 / eps
    return BartnikData(
        point=np.asarray(x, dtype=float),
        gamma=(plus.gamma - minus.gamma) * scale,
        H=(plus.H - minus.H) * scale,
        k=(plus.k - minus.k) * scale,
        tau=(plus.tau - minus.tau) * scale,
    )


def flat_gauge_split(h4: Field, x: np.ndarray) -> Dict[str, np.ndarray]:
    """
    beta_{g_0} h4 computed directly and through the split

        beta(d_t)  = delta Y = -div Y
        beta(d_i)  = (delta h)_i + 1/2 d_i (tr h + 2 v)
    """
    x = np.asarray(x, dtype=float)
    minkowski = Metric4(name="minkowski_exterior", components=minkowski_components)
    direct = bianchi(minkowski, h4, x)
    d4 = partials(h4, x, minkowski.step, minkowski.levels)
    dh, dY = d4[:, 1:, 1:], d4[:, 0, 1:]
    dv = -0.5 * d4[:, 0, 0]
    split = np.concatenate([
        [-float(np.trace(dY))],
        -np.einsum('kki->i', dh) + 0.5 * (np.einsum('kii->k', dh) + 2.0 * dv),
    ])
    return {"direct": direct, "split": split}


def random_quadratic_deformation(rng: np.random.Generator, scale: float = 1.0) -> Field:
    """Symmetric 4x4 field A + B_k x^k + C_kl x^k x^l with normal coefficients"""

    def symmetric(shape):
        m = rng.normal(size=shape + (4, 4)) * scale
        return 0.5 * (m + np.swapaxes(m, -1, -2))

    A, B, C = symmetric(()), symmetric((3,)), symmetric((3, 3))
    return lambda x: A + np.einsum('k,kab->ab', x, B) + np.einsum('k,l,klab->ab', x, x, C)


def flat_split_residual(fields: Iterable[Field], points: Iterable[np.ndarray]) -> Dict[str, Any]:
    """Max |direct - split| over deformations and points"""
    points = list(points)
    worst, count = 0.0, 0
    for h4 in fields:
        for x in points:
            result = flat_gauge_split(h4, x)
            worst = max(worst, float(np.max(np.abs(result["direct"] - result["split"]))))
            count += 1
    return {"n_points": count, "max_error": worst}


__all__ = [
    "split_deformation",
    "linearized_bartnik",
    "perturbed_minkowski",
    "linearize_numerically",
    "flat_gauge_split",
    "random_quadratic_deformation",
    "flat_split_residual",
]
