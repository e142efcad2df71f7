"""
Boundary and gauge conditions of the linearized gauged problem at the flat
exterior background, and their assembly into a ModeSystem

Unknowns are eleven Cartesian scalars (h_ij, Y_i, v, G), each a sum of
decaying harmonics, so the interior equations hold identically. With
n = x / r and P = I - n n the fifteen conditions at r = 1 are

    gamma_ij  = (P h P)_ij
    H         = -(div h)(n) + 1/2 n(tr h) + 1/2 n^i n^j n(h_ij) - tr h / r + 2 h_nn / r
    k         = -(div Y - <D_n Y, n>) + 2 G
    tau       = -P sym(DY) n + P grad G
    div_Y     = -div Y
    gauge     = -div h + 1/2 d(tr h + 2 v)

Each is projected onto Y_l'm' for l' <= L + 4, which captures the whole
condition because the normals raise the degree by at most four.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from flatbvp.harmonics import basis_table, mode_count, mode_labels, sphere_values
from flatbvp.quadrature import SphereGrid, sphere_quadrature
from utils.errors import UsageError
from utils.logger import logger
from utils.profiler import time_function

COMPONENTS = ("h11", "h12", "h13", "h22", "h23", "h33", "Y1", "Y2", "Y3", "v", "G")
TENSOR_INDEX = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
CONDITIONS = (
    "gamma_11", "gamma_12", "gamma_13", "gamma_22", "gamma_23", "gamma_33",
    "H", "k", "tau_1", "tau_2", "tau_3", "div_Y", "gauge_1", "gauge_2", "gauge_3",
)
BLOCKS: Dict[str, Tuple[str, ...]] = {
    "gamma": CONDITIONS[0:6],
    "H": ("H",),
    "k": ("k",),
    "tau": CONDITIONS[8:11],
    "div_Y": ("div_Y",),
    "gauge": CONDITIONS[12:15],
}
ROW_HEADROOM = 4
QUADRATURE_HEADROOM = 2 * ROW_HEADROOM

# Off-diagonal tensor entries count twice in the Frobenius norm
_SYMMETRIC_WEIGHTS = np.array([1.0 if i == j else np.sqrt(2.0) for i, j in TENSOR_INDEX])
COMPONENT_WEIGHTS = np.concatenate([_SYMMETRIC_WEIGHTS, np.ones(5)])
CONDITION_WEIGHTS = np.concatenate([_SYMMETRIC_WEIGHTS, np.ones(9)])


def symmetric_from_components(six: np.ndarray) -> np.ndarray:
    """(..., 6) in TENSOR_INDEX order -> symmetric (..., 3, 3)"""
    six = np.asarray(six, dtype=float)
    out = np.zeros(six.shape[:-1] + (3, 3))
    for k, (i, j) in enumerate(TENSOR_INDEX):
        out[..., i, j] = six[..., k]
        out[..., j, i] = six[..., k]
    return out


def components_from_symmetric(tensor: np.ndarray) -> np.ndarray:
    tensor = np.asarray(tensor, dtype=float)
    return np.stack([tensor[..., i, j] for i, j in TENSOR_INDEX], axis=-1)


@dataclass
class ComponentFields:
    """Values (N, 11), gradients (N, 11, 3) and optional Hessians of the unknowns at points (N, 3)"""

    points: np.ndarray
    value: np.ndarray
    gradient: np.ndarray
    hessian: Optional[np.ndarray] = None

    @classmethod
    def single(cls, points: np.ndarray, component: int, value: np.ndarray,
               gradient: np.ndarray) -> "ComponentFields":
        """Fields with one nonzero component"""
        count = len(points)
        values = np.zeros((count, len(COMPONENTS)))
        gradients = np.zeros((count, len(COMPONENTS), 3))
        values[:, component] = value
        gradients[:, component] = gradient
        return cls(points=points, value=values, gradient=gradients)

    @property
    def h(self) -> np.ndarray:
        return symmetric_from_components(self.value[:, :6])

    @property
    def dh(self) -> np.ndarray:
        """dh[:, a, b, c] = d_a h_bc"""
        return symmetric_from_components(np.swapaxes(self.gradient[:, :6, :], 1, 2))

    @property
    def Y(self) -> np.ndarray:
        return self.value[:, 6:9]

    @property
    def dY(self) -> np.ndarray:
        """dY[:, a, b] = d_a Y_b"""
        return np.swapaxes(self.gradient[:, 6:9, :], 1, 2)

    @property
    def v(self) -> np.ndarray:
        return self.value[:, 9]

    @property
    def dv(self) -> np.ndarray:
        return self.gradient[:, 9, :]

    @property
    def G(self) -> np.ndarray:
        return self.value[:, 10]

    @property
    def dG(self) -> np.ndarray:
        return self.gradient[:, 10, :]

    def h4(self) -> np.ndarray:
        """Time-independent 4-deformation: h4_00 = -2v, h4_0i = Y_i, h4_ij = h_ij"""
        out = np.zeros((len(self.points), 4, 4))
        out[:, 0, 0] = -2.0 * self.v
        out[:, 0, 1:] = self.Y
        out[:, 1:, 0] = self.Y
        out[:, 1:, 1:] = self.h
        return out

    def laplacian(self) -> np.ndarray:
        if self.hessian is None:
            raise ValueError("fields were evaluated without Hessians")
        return np.einsum('ncaa->nc', self.hessian)


def gauge_values(fields: ComponentFields) -> np.ndarray:
    """(delta Y, delta h + 1/2 d(tr h + 2v)) as (N, 4)"""
    dh = fields.dh
    div_h = np.einsum('naaj->nj', dh)
    d_trace = np.einsum('nkaa->nk', dh)
    div_Y = np.einsum('naa->n', fields.dY)
    return np.column_stack([-div_Y, -div_h + 0.5 * d_trace + fields.dv])


def conditions(fields: ComponentFields) -> np.ndarray:
    """All fifteen condition values at the (sphere) points, shape (N, 15)"""
    x = fields.points
    r = np.linalg.norm(x, axis=-1)
    n = x / r[:, None]
    P = np.eye(3)[None] - n[:, :, None] * n[:, None, :]
    h, dh, dY = fields.h, fields.dh, fields.dY

    gamma = np.einsum('nij,njk,nkl->nil', P, h, P)

    div_h = np.einsum('naaj->nj', dh)
    d_trace = np.einsum('nkaa->nk', dh)
    trace = np.einsum('naa->n', h)
    h_nn = np.einsum('ni,nij,nj->n', n, h, n)
    H = (
        -np.einsum('nj,nj->n', div_h, n)
        + 0.5 * np.einsum('nk,nk->n', d_trace, n)
        + 0.5 * np.einsum('ni,nj,nk,nkij->n', n, n, n, dh)
        - trace / r
        + 2.0 * h_nn / r
    )

    div_Y = np.einsum('naa->n', dY)
    k = -(div_Y - np.einsum('na,nab,nb->n', n, dY, n)) + 2.0 * fields.G
    sym_dY = 0.5 * (dY + np.swapaxes(dY, 1, 2))
    tau = -np.einsum('nij,njk,nk->ni', P, sym_dY, n) + np.einsum('nij,nj->ni', P, fields.dG)

    return np.column_stack([components_from_symmetric(gamma), H, k, tau, gauge_values(fields)])


@dataclass
class ModeSystem:
    """
    Dense real system over decaying-harmonic coefficients

    Rows are (condition, l', m') with l' <= lmax + ROW_HEADROOM, condition-major;
    columns are (component, l, m) with l <= lmax, component-major. ``matrix`` is
    unweighted; ``weighted()`` applies the Frobenius weights on both sides.
    """

    lmax: int
    matrix: np.ndarray
    grid: SphereGrid
    conditions: Tuple[str, ...] = CONDITIONS
    rhs: Optional[np.ndarray] = None
    dropped: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def row_lmax(self) -> int:
        return self.lmax + ROW_HEADROOM

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    @property
    def row_labels(self) -> List[Tuple[str, int, int]]:
        return [(c, l, m) for c in self.conditions for l, m in mode_labels(self.row_lmax)]

    @property
    def column_labels(self) -> List[Tuple[str, int, int]]:
        return [(c, l, m) for c in COMPONENTS for l, m in mode_labels(self.lmax)]

    @property
    def row_weights(self) -> np.ndarray:
        per_condition = dict(zip(CONDITIONS, CONDITION_WEIGHTS))
        return np.repeat([per_condition[c] for c in self.conditions], mode_count(self.row_lmax))

    @property
    def column_weights(self) -> np.ndarray:
        return np.repeat(COMPONENT_WEIGHTS, mode_count(self.lmax))

    def weighted(self) -> np.ndarray:
        return self.row_weights[:, None] * self.matrix / self.column_weights[None, :]

    def project(self, values: np.ndarray) -> np.ndarray:
        """Row vector of (N, 15) condition samples on the grid"""
        weighted = sphere_values(self.row_lmax, self.grid.points) * self.grid.weights
        projected = (weighted @ np.asarray(values, dtype=float)).T
        keep = [CONDITIONS.index(c) for c in self.conditions]
        return projected[keep].ravel()

    def with_rhs(self, rhs: np.ndarray) -> "ModeSystem":
        rhs = np.asarray(rhs, dtype=float)
        if rhs.shape != (self.shape[0],):
            raise ValueError(f"rhs must have shape ({self.shape[0]},), got {rhs.shape}")
        return replace(self, rhs=rhs)

    def without(self, *blocks: str) -> "ModeSystem":
        """Copy with whole condition blocks removed"""
        removed = set()
        for block in blocks:
            if block not in BLOCKS:
                raise UsageError(f"unknown condition block {block!r}; choose from {sorted(BLOCKS)}")
            removed.update(BLOCKS[block])
        keep = [i for i, c in enumerate(self.conditions) if c not in removed]
        per_block = mode_count(self.row_lmax)
        rows = np.concatenate([np.arange(i * per_block, (i + 1) * per_block) for i in keep])
        return replace(
            self,
            matrix=self.matrix[rows],
            conditions=tuple(self.conditions[i] for i in keep),
            rhs=None if self.rhs is None else self.rhs[rows],
            dropped=self.dropped + tuple(blocks),
        )


def system_grid(lmax: int, quadrature_degree: Optional[int] = None,
                rotation: Optional[np.ndarray] = None) -> SphereGrid:
    required = 2 * lmax + QUADRATURE_HEADROOM
    if quadrature_degree is None:
        quadrature_degree = required
    elif quadrature_degree < required:
        logger.warning(f"⚠️ Quadrature degree {quadrature_degree} too low for L={lmax}, raised to {required}")
        quadrature_degree = required
    return sphere_quadrature(quadrature_degree, rotation)


@time_function
def assemble(lmax: int, quadrature_degree: Optional[int] = None,
             rotation: Optional[np.ndarray] = None) -> ModeSystem:
    """
    Homogeneous ModeSystem at truncation degree lmax

    Args:
        lmax: Truncation degree L >= 2
        quadrature_degree: Requested exactness; raised to 2L + 8 if lower
        rotation: Optional rotation of the quadrature grid

    Returns:
        ModeSystem with 15 (L + 5)^2 rows and 11 (L + 1)^2 columns
    """
    if lmax < 2:
        raise UsageError(f"truncation degree must be >= 2, got {lmax}")
    grid = system_grid(lmax, quadrature_degree, rotation)
    values, gradients, _ = basis_table(lmax, grid.points)
    weighted = sphere_values(lmax + ROW_HEADROOM, grid.points) * grid.weights

    columns = []
    for component in range(len(COMPONENTS)):
        for mode in range(mode_count(lmax)):
            fields = ComponentFields.single(grid.points, component, values[mode], gradients[mode])
            columns.append((weighted @ conditions(fields)).T.ravel())
    matrix = np.column_stack(columns)
    logger.info(f"🧮 Assembled flat mode system at L={lmax}: {matrix.shape[0]} x {matrix.shape[1]}")
    return ModeSystem(lmax=lmax, matrix=matrix, grid=grid)


def coupling_bandwidth(system: ModeSystem, relative_tolerance: float = 1e-10) -> int:
    """Largest |l - l'| over structurally nonzero entries"""
    row_degree = np.array([l for _, l, _ in system.row_labels])
    column_degree = np.array([l for _, l, _ in system.column_labels])
    magnitude = np.abs(system.matrix)
    rows, cols = np.nonzero(magnitude > relative_tolerance * magnitude.max())
    return int(np.max(np.abs(row_degree[rows] - column_degree[cols])))


__all__ = [
    "COMPONENTS",
    "TENSOR_INDEX",
    "CONDITIONS",
    "BLOCKS",
    "ROW_HEADROOM",
    "COMPONENT_WEIGHTS",
    "CONDITION_WEIGHTS",
    "symmetric_from_components",
    "components_from_symmetric",
    "ComponentFields",
    "gauge_values",
    "conditions",
    "ModeSystem",
    "system_grid",
    "assemble",
    "coupling_bandwidth",
]
