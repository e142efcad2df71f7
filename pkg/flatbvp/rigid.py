"""
Decaying representatives of the flat rigid motions

Each Poincare generator contributes one solution of the homogeneous
problem, written with c a constant vector and omega a rotation axis:

    time translation   Y = grad(1/r),          G = -1/r
    boost c            Y = grad(c.x / r^3),    G = -3 c.x / r^3
    translation c      h = sym(x c^T) / r^3
    rotation omega     h = 3 sym(x (omega x x)^T) / r^5

All components are single decaying harmonics of degree <= 2.
"""

from typing import Dict, Optional

import numpy as np

from flatbvp.assembly import COMPONENTS, components_from_symmetric
from flatbvp.harmonics import project
from flatbvp.quadrature import SphereGrid, sphere_quadrature

AXES = ("x", "y", "z")
RIGID_MOTIONS = (
    ("time_translation",)
    + tuple(f"boost_{a}" for a in AXES)
    + tuple(f"translation_{a}" for a in AXES)
    + tuple(f"rotation_{a}" for a in AXES)
)


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + np.swapaxes(a, -1, -2))


def rigid_fields(points: np.ndarray) -> Dict[str, np.ndarray]:
    """Component values (N, 11) of every rigid motion at points (N, 3), |x| >= 1"""
    x = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.linalg.norm(x, axis=-1)
    count = len(x)

    def empty():
        return np.zeros((count, len(COMPONENTS)))

    fields = {}
    time = empty()
    time[:, 6:9] = -x / r[:, None] ** 3
    time[:, 10] = -1.0 / r
    fields["time_translation"] = time

    for axis, c in zip(AXES, np.eye(3)):
        cx = x @ c
        boost = empty()
        boost[:, 6:9] = c / r[:, None] ** 3 - 3.0 * cx[:, None] * x / r[:, None] ** 5
        boost[:, 10] = -3.0 * cx / r ** 3
        fields[f"boost_{axis}"] = boost

        translation = empty()
        h = _sym(x[:, :, None] * c[None, None, :]) / r[:, None, None] ** 3
        translation[:, :6] = components_from_symmetric(h)
        fields[f"translation_{axis}"] = translation

        rotation = empty()
        turned = np.cross(c, x)
        h = 3.0 * _sym(x[:, :, None] * turned[:, None, :]) / r[:, None, None] ** 5
        rotation[:, :6] = components_from_symmetric(h)
        fields[f"rotation_{axis}"] = rotation
    return fields


def rigid_vectors(lmax: int, grid: Optional[SphereGrid] = None) -> np.ndarray:
    """
    Unweighted coefficient vectors of the ten rigid motions

    Returns:
        Array (11 (lmax + 1)^2, 10) in ModeSystem column order
    """
    if lmax < 2:
        raise ValueError(f"rigid motions need lmax >= 2, got {lmax}")
    grid = sphere_quadrature(2 * lmax + 2) if grid is None else grid
    fields = rigid_fields(grid.points)
    columns = []
    for name in RIGID_MOTIONS:
        coefficients = project(grid, fields[name], lmax)
        columns.append(coefficients.T.ravel())
    return np.column_stack(columns)


__all__ = ["RIGID_MOTIONS", "rigid_fields", "rigid_vectors"]
