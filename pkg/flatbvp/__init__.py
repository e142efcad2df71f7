"""
Spectral solver for the linearized gauged Bartnik problem at the flat exterior
"""

from flatbvp.quadrature import SphereGrid, sphere_quadrature
from flatbvp.harmonics import basis_eval, basis_table, harmonic_index, mode_count, sphere_values
from flatbvp.assembly import BLOCKS, COMPONENTS, CONDITIONS, ModeSystem, assemble, coupling_bandwidth
from flatbvp.rigid import RIGID_MOTIONS, rigid_vectors
from flatbvp.unknowns import LinearizedUnknowns, radial_profiles
from flatbvp.data import (
    ambient_data,
    data_vector,
    load_perturbation,
    random_perturbation,
    write_perturbation,
    zero_perturbation,
)
from flatbvp.solve import harmonic_vector_flat, boundary_residual, kernel_check, radial_reference, solve
from flatbvp.rotation import random_rotation, rotate_perturbation, rotate_unknowns

__all__ = [
    "SphereGrid",
    "sphere_quadrature",
    "basis_eval",
    "basis_table",
    "harmonic_index",
    "mode_count",
    "sphere_values",
    "BLOCKS",
    "COMPONENTS",
    "CONDITIONS",
    "ModeSystem",
    "assemble",
    "coupling_bandwidth",
    "RIGID_MOTIONS",
    "rigid_vectors",
    "LinearizedUnknowns",
    "radial_profiles",
    "ambient_data",
    "data_vector",
    "load_perturbation",
    "random_perturbation",
    "write_perturbation",
    "zero_perturbation",
    "harmonic_vector_flat",
    "boundary_residual",
    "kernel_check",
    "radial_reference",
    "solve",
    "random_rotation",
    "rotate_perturbation",
    "rotate_unknowns",
]
