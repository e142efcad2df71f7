"""
Stationary vacuum equations in lapse-shift form, with K = -(1/2N) L_X g:

    R + (tr K)^2 - |K|^2 = 0
    delta K + d tr K = 0
    Ric + (tr K) K - 2 K o K - N^-1 D^2 N - N^-1 L_X K = 0
"""

from typing import Dict, Iterable

import numpy as np

from geometry.bartnik import SliceGeometry
from geometry.calculus import LeviCivita
from geometry.metric import Metric4
from utils.logger import logger
from utils.profiler import time_function


@time_function
def verify_vacuum_adm(g: Metric4, points: Iterable[np.ndarray]) -> Dict[str, float]:
    """
    Max residuals of the three stationary vacuum equations

    Returns:
        {"hamiltonian", "momentum", "evolution", "n_points"}
    """
    slice_geometry = SliceGeometry(g)
    triple = slice_geometry.triple
    calculus = LeviCivita(triple.g, 3, g.step, g.levels)
    K_field = slice_geometry.second_fundamental_form
    residuals = {"hamiltonian": 0.0, "momentum": 0.0, "evolution": 0.0}
    count = 0

    for x in points:
        g_inv = calculus.inverse(x)
        K = K_field(x)
        K_mixed = g_inv @ K
        tr_K = float(np.trace(K_mixed))
        K_sq = float(np.einsum('ab,cd,ac,bd', g_inv, g_inv, K, K))
        ricci = calculus.ricci(x)
        R = float(np.einsum('ab,ab', g_inv, ricci))
        residuals["hamiltonian"] = max(residuals["hamiltonian"], abs(R + tr_K ** 2 - K_sq))

        delta_K = calculus.delta(K_field, x)
        d_tr_K = calculus.d(lambda p: float(np.einsum('ab,ab', calculus.inverse(p), K_field(p))), x)
        residuals["momentum"] = max(residuals["momentum"], float(np.max(np.abs(delta_K + d_tr_K))))

        N = triple.N(x)
        K_o_K = K @ K_mixed
        evolution = (
            ricci
            + tr_K * K
            - 2.0 * K_o_K
            - calculus.hessian(triple.N, x) / N
            - calculus.lie_tensor(K_field, triple.X, x) / N
        )
        residuals["evolution"] = max(residuals["evolution"], float(np.max(np.abs(evolution))))
        count += 1

    logger.info(f"🌀 ADM vacuum residuals on {g.name}: {residuals}")
    return {**residuals, "n_points": count}


__all__ = ["verify_vacuum_adm"]
