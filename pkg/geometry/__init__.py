"""
Finite-difference geometry of explicit stationary 4-metrics
"""

from geometry.metric import (
    Metric4,
    ProjectionTriple,
    StationaryTriple,
    assemble_adm,
    assemble_projection,
    projection_to_stationary,
)
from geometry.fixtures import FIXTURE_NAMES, Fixture, fixture
from geometry.curvature import Curvature, curvature, vacuum_residual
from geometry.operators import (
    bianchi,
    delta_star,
    delta_star_blocks,
    lie_alpha_squared,
    recompose,
    split_vector,
)
from geometry.quotient import QuotientData, compare_with_oracle, quotient_bianchi_rhs, verify_vacuum_projection
from geometry.bartnik import (
    BartnikData,
    bartnik_data,
    time_translate,
    translation_group_membership,
    verify_transformation_laws,
    verify_translation_invariance,
)
from geometry.adm import verify_vacuum_adm
from geometry.linearized import flat_gauge_split, linearized_bartnik
from geometry.convergence import convergence_table, write_convergence_csv
from geometry.identities import geometry_identity_battery

__all__ = [
    "Metric4",
    "ProjectionTriple",
    "StationaryTriple",
    "assemble_adm",
    "assemble_projection",
    "projection_to_stationary",
    "FIXTURE_NAMES",
    "Fixture",
    "fixture",
    "Curvature",
    "curvature",
    "vacuum_residual",
    "bianchi",
    "delta_star",
    "delta_star_blocks",
    "lie_alpha_squared",
    "recompose",
    "split_vector",
    "QuotientData",
    "compare_with_oracle",
    "quotient_bianchi_rhs",
    "verify_vacuum_projection",
    "BartnikData",
    "bartnik_data",
    "time_translate",
    "translation_group_membership",
    "verify_transformation_laws",
    "verify_translation_invariance",
    "verify_vacuum_adm",
    "flat_gauge_split",
    "linearized_bartnik",
    "convergence_table",
    "write_convergence_csv",
    "geometry_identity_battery",
]
