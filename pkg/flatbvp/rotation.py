"""
Action of SO(3) on coefficient tables

A rotation Q acts on the unknowns by F'(x) = T(Q) F(Q^T x) with h -> Q h Q^T,
Y -> Q Y and v, G scalars; on the data potentials it acts as on scalars,
since every data tensor is built from them with the rotation-covariant
operations grad, Hess and n x.
"""

from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import special_ortho_group

from config.settings import settings
from flatbvp.assembly import components_from_symmetric, symmetric_from_components
from flatbvp.harmonics import mode_labels, project, sphere_values
from flatbvp.quadrature import sphere_quadrature
from flatbvp.unknowns import COEFFICIENT_FLOOR, LinearizedUnknowns
from reports.models import BoundaryPerturbation, ModeCoefficient


def random_rotation(seed: Optional[int] = None) -> np.ndarray:
    return special_ortho_group.rvs(3, random_state=settings.SEED if seed is None else seed)


def rotate_unknowns(unknowns: LinearizedUnknowns, rotation: np.ndarray) -> LinearizedUnknowns:
    Q = np.asarray(rotation, dtype=float)
    grid = sphere_quadrature(2 * unknowns.lmax)
    values = unknowns.fields(grid.points @ Q).value
    h = symmetric_from_components(values[:, :6])
    turned = values.copy()
    turned[:, :6] = components_from_symmetric(np.einsum('ij,njk,lk->nil', Q, h, Q))
    turned[:, 6:9] = values[:, 6:9] @ Q.T
    coefficients = project(grid, turned, unknowns.lmax).T
    return LinearizedUnknowns(lmax=unknowns.lmax, coefficients=coefficients)


def rotate_perturbation(perturbation: BoundaryPerturbation, rotation: np.ndarray,
                        floor: float = COEFFICIENT_FLOOR) -> BoundaryPerturbation:
    """Rotate every potential; modes below ``floor`` are dropped"""
    Q = np.asarray(rotation, dtype=float)
    lmax = perturbation.lmax
    grid = sphere_quadrature(2 * lmax)
    source = sphere_values(lmax, grid.points @ Q)
    labels = mode_labels(lmax)
    index = {label: i for i, label in enumerate(labels)}

    potentials: Dict[Tuple[str, str], np.ndarray] = defaultdict(lambda: np.zeros(len(labels)))
    for name, mode in perturbation.modes():
        potentials[(name, mode.part)][index[(mode.l, mode.m)]] += mode.value

    rotated: Dict[str, List[ModeCoefficient]] = defaultdict(list)
    for (name, part), coefficients in sorted(potentials.items()):
        turned = project(grid, coefficients @ source, lmax)
        rotated[name].extend(
            ModeCoefficient(l=l, m=m, value=float(value), part=part)
            for (l, m), value in zip(labels, turned) if abs(value) > floor
        )
    return BoundaryPerturbation(lmax=lmax, **rotated)


__all__ = ["random_rotation", "rotate_unknowns", "rotate_perturbation"]
