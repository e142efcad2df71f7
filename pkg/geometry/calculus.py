"""
Levi-Civita calculus of a t-independent metric by finite differences

Index conventions: dg[a, b, c] = d_a g_bc, G[l, m, n] = Gamma^l_mn,
dY[m, n] = d_m Y^n. Sign conventions: delta = -tr nabla, Delta = -tr Hess,
rough Laplacian nabla* nabla = -tr nabla^2.
"""

from typing import Callable, Optional

import numpy as np

from config.settings import settings
from geometry.finite_difference import partials

Field = Callable[[np.ndarray], np.ndarray]


class LeviCivita:
    """Connection, curvature and covariant derivatives of one metric"""

    def __init__(self, metric: Field, dim: int, step: Optional[float] = None, levels: Optional[int] = None):
        """
        Args:
            metric: Component function x -> (dim, dim)
            dim: 4 for spacetime metrics (index 0 is t), 3 for spatial ones
            step: Relative finite-difference step
            levels: Richardson levels
        """
        self.metric = metric
        self.dim = dim
        self.step = settings.FD_STEP if step is None else step
        self.levels = settings.RICHARDSON_LEVELS if levels is None else levels

    @classmethod
    def of(cls, g4) -> "LeviCivita":
        """Calculus of a Metric4 with its own stencil settings"""
        return cls(g4.at, 4, g4.step, g4.levels)

    def d(self, func: Field, x: np.ndarray) -> np.ndarray:
        return partials(func, x, self.step, self.levels, spacetime=self.dim == 4)

    def inverse(self, x: np.ndarray) -> np.ndarray:
        return np.linalg.inv(self.metric(x))

    # connection and curvature

    def christoffel(self, x: np.ndarray) -> np.ndarray:
        g_inv = self.inverse(x)
        dg = self.d(self.metric, x)
        # Gamma^l_mn = 1/2 g^ls (d_m g_sn + d_n g_sm - d_s g_mn)
        return 0.5 * (
            np.einsum('ls,msn->lmn', g_inv, dg)
            + np.einsum('ls,nsm->lmn', g_inv, dg)
            - np.einsum('ls,smn->lmn', g_inv, dg)
        )

    def ricci(self, x: np.ndarray) -> np.ndarray:
        G = self.christoffel(x)
        dG = self.d(self.christoffel, x)
        return (
            np.einsum('aamn->mn', dG)
            - np.einsum('naam->mn', dG)
            + np.einsum('aas,smn->mn', G, G)
            - np.einsum('ans,sam->mn', G, G)
        )

    def scalar_curvature(self, x: np.ndarray) -> float:
        return float(np.einsum('ab,ab', self.inverse(x), self.ricci(x)))

    # scalars

    def gradient(self, f: Callable[[np.ndarray], float], x: np.ndarray) -> np.ndarray:
        """(grad f)^a = g^ab d_b f"""
        return self.inverse(x) @ self.d(f, x)

    def hessian(self, f: Callable[[np.ndarray], float], x: np.ndarray) -> np.ndarray:
        """D_a D_b f"""
        ddf = self.d(lambda p: self.d(f, p), x)
        return ddf - np.einsum('cab,c->ab', self.christoffel(x), self.d(f, x))

    def laplacian(self, f: Callable[[np.ndarray], float], x: np.ndarray) -> float:
        """Delta f = -g^ab D_a D_b f"""
        return -float(np.einsum('ab,ab', self.inverse(x), self.hessian(f, x)))

    # vectors

    def nabla_vector(self, Y: Field, x: np.ndarray) -> np.ndarray:
        """DY[m, n] = nabla_m Y^n"""
        return self.d(Y, x) + np.einsum('nml,l->mn', self.christoffel(x), np.asarray(Y(x)))

    def rough_laplacian(self, Y: Field, x: np.ndarray) -> np.ndarray:
        """(nabla* nabla Y)^c = -g^ab (nabla^2 Y)_ab^c"""
        G = self.christoffel(x)
        DY = self.nabla_vector(Y, x)
        dDY = self.d(lambda p: self.nabla_vector(Y, p), x)
        second = (
            dDY
            - np.einsum('dab,dc->abc', G, DY)
            + np.einsum('cad,bd->abc', G, DY)
        )
        return -np.einsum('ab,abc->c', self.inverse(x), second)

    def divergence(self, Y: Field, x: np.ndarray) -> float:
        return float(np.trace(self.nabla_vector(Y, x)))

    # symmetric 2-tensors

    def nabla_tensor(self, h: Field, x: np.ndarray) -> np.ndarray:
        """Dh[a, b, c] = nabla_a h_bc"""
        G = self.christoffel(x)
        hx = np.asarray(h(x))
        return (
            self.d(h, x)
            - np.einsum('dab,dc->abc', G, hx)
            - np.einsum('dac,bd->abc', G, hx)
        )

    def delta(self, h: Field, x: np.ndarray) -> np.ndarray:
        """(delta h)_b = -g^ac nabla_a h_cb"""
        return -np.einsum('ac,acb->b', self.inverse(x), self.nabla_tensor(h, x))

    def trace(self, h: Field) -> Callable[[np.ndarray], float]:
        return lambda p: float(np.einsum('ab,ab', self.inverse(p), np.asarray(h(p))))

    def lie_tensor(self, T: Field, Y: Field, x: np.ndarray) -> np.ndarray:
        """(L_Y T)_ab = Y^c d_c T_ab + T_cb d_a Y^c + T_ac d_b Y^c"""
        Tx = np.asarray(T(x))
        dY = self.d(Y, x)
        return (
            np.einsum('c,cab->ab', np.asarray(Y(x)), self.d(T, x))
            + np.einsum('cb,ac->ab', Tx, dY)
            + np.einsum('ac,bc->ab', Tx, dY)
        )


__all__ = ["LeviCivita"]
