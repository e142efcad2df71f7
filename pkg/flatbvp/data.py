"""
Linearized Bartnik data around (round metric, H = 2, k = 0, tau = 0)

Perturbations are given by scalar potentials expanded in real orthonormal
spherical harmonics Y_lm. On the unit sphere with n = x, P = I - n n,
J v = n x v and Hs the sphere Hessian of a potential:

    gamma'  "trace"  phi sigma
            "even"   (Hs psi)_0 = Hs psi + 1/2 l(l+1) psi sigma       (l >= 2)
            "odd"    1/2 (Hs chi J - J Hs chi)                         (l >= 2)
    H', k'  "scalar" the potential itself
    tau'    "even"   grad_S alpha                                      (l >= 1)
            "odd"    n x grad_S beta                                   (l >= 1)

Tensors are returned as ambient 3x3 (tangential) matrices, vectors as
ambient tangential 3-vectors, matching the rows of the ModeSystem.
"""

import json
from pathlib import Path
from typing import Optional, Union

import numpy as np
from pydantic import ValidationError

from flatbvp.assembly import CONDITIONS, ModeSystem, components_from_symmetric
from flatbvp.harmonics import solid_harmonic
from reports.models import BoundaryPerturbation, ModeCoefficient
from utils.errors import UsageError
from utils.logger import logger

# l = 1 data meet the cokernel of the flat problem
SKIPPED_DEGREES = (1,)


def check_perturbation(perturbation: BoundaryPerturbation) -> BoundaryPerturbation:
    if perturbation.max_degree() > perturbation.lmax:
        raise UsageError(
            f"perturbation declares lmax={perturbation.lmax} but carries degree {perturbation.max_degree()}"
        )
    return perturbation


def load_perturbation(path: Union[str, Path]) -> BoundaryPerturbation:
    """Read and validate a boundary-data JSON file"""
    path = Path(path)
    if not path.exists():
        raise UsageError(f"input file not found: {path}")
    try:
        perturbation = BoundaryPerturbation.model_validate_json(path.read_text())
    except (ValidationError, json.JSONDecodeError) as e:
        raise UsageError(f"invalid boundary data in {path}: {e}") from e
    logger.info(f"🔍 Loaded boundary perturbation with {sum(1 for _ in perturbation.modes())} modes from {path}")
    return check_perturbation(perturbation)


def zero_perturbation(lmax: int = 0) -> BoundaryPerturbation:
    return BoundaryPerturbation(lmax=lmax)


def random_perturbation(rng: np.random.Generator, lmax: int, scale: float = 1e-3) -> BoundaryPerturbation:
    """Every admissible potential mode with l <= lmax, l = 1 skipped, coefficients ~ scale"""

    def draw(part: str, lowest: int):
        return [
            ModeCoefficient(l=l, m=m, value=float(rng.normal() * scale), part=part)
            for l in range(lowest, lmax + 1) if l not in SKIPPED_DEGREES
            for m in range(-l, l + 1)
        ]

    return BoundaryPerturbation(
        lmax=lmax,
        gamma_prime=draw("trace", 0) + draw("even", 2) + draw("odd", 2),
        H_prime=draw("scalar", 0),
        k_prime=draw("scalar", 0),
        tau_prime=draw("even", 1) + draw("odd", 1),
    )


def _cross_matrix(n: np.ndarray) -> np.ndarray:
    J = np.zeros(n.shape[:-1] + (3, 3))
    J[..., 0, 1], J[..., 0, 2] = -n[..., 2], n[..., 1]
    J[..., 1, 0], J[..., 1, 2] = n[..., 2], -n[..., 0]
    J[..., 2, 0], J[..., 2, 1] = -n[..., 1], n[..., 0]
    return J


def ambient_data(perturbation: BoundaryPerturbation, points: np.ndarray) -> np.ndarray:
    """
    Data values at unit-sphere points in CONDITIONS order, shape (N, 15)

    The gauge rows carry zero data.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points / np.linalg.norm(points, axis=-1, keepdims=True)
    P = np.eye(3)[None] - n[:, :, None] * n[:, None, :]
    J = _cross_matrix(n)
    gamma = np.zeros((len(n), 3, 3))
    tau = np.zeros((len(n), 3))
    out = np.zeros((len(n), len(CONDITIONS)))

    for name, mode in perturbation.modes():
        R, gR, HR = solid_harmonic(mode.l, mode.m).evaluate(n)
        c = mode.value
        if name == "H_prime":
            out[:, CONDITIONS.index("H")] += c * R
        elif name == "k_prime":
            out[:, CONDITIONS.index("k")] += c * R
        elif name == "tau_prime":
            tangential = np.einsum('nij,nj->ni', P, gR)
            tau += c * (tangential if mode.part == "even" else np.cross(n, gR))
        elif mode.part == "trace":
            gamma += c * R[:, None, None] * P
        else:
            sphere_hessian = P @ HR @ P - mode.l * R[:, None, None] * P
            if mode.part == "even":
                gamma += c * (sphere_hessian + 0.5 * mode.l * (mode.l + 1) * R[:, None, None] * P)
            else:
                gamma += c * 0.5 * (sphere_hessian @ J - J @ sphere_hessian)

    out[:, :6] = components_from_symmetric(gamma)
    out[:, 8:11] = tau
    return out


def data_vector(perturbation: BoundaryPerturbation, system: ModeSystem) -> np.ndarray:
    """Unweighted right-hand side in the system's row order"""
    return system.project(ambient_data(perturbation, system.grid.points))


def write_perturbation(perturbation: BoundaryPerturbation, path: Union[str, Path],
                       indent: Optional[int] = 2) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(perturbation.model_dump(), indent=indent, sort_keys=True) + "\n")
    return path


__all__ = [
    "SKIPPED_DEGREES",
    "check_perturbation",
    "load_perturbation",
    "zero_perturbation",
    "random_perturbation",
    "ambient_data",
    "data_vector",
    "write_perturbation",
]
