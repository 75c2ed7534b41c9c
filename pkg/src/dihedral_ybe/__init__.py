"""Dihedral quantum-double representation theory and Yang-Baxter machinery."""

from __future__ import annotations

from .builders import (
    descendant_even,
    descendant_even_family,
    descendant_family,
    descendant_odd,
    descendant_pm,
    descendant_pm_family,
    l_ansatz,
    l_operator,
    l_operator_family,
    six_vertex_family,
    six_vertex_r,
    two_param_R,
    two_param_family,
)
from .checks import (
    EquivalenceResult,
    VerificationReport,
    check_adjoint_symmetry,
    check_f_constraints,
    check_g_identity,
    check_LLR,
    check_projectors,
    check_properties,
    check_rLL,
    check_str,
    check_two_param,
    check_ybe,
    default_tolerance,
    find_equivalence,
    fz_pole_positions,
    perturbed_family,
    swapped_form,
)
from .coeffs import CoeffTable, SixVertexParams
from .export import ExportRecord, round_trip_equal
from .fz import (
    ConvergenceError,
    FZWeights,
    fz_limit_closed_form,
    fz_limit_R,
    star_triangle_sides,
)
from .irreps import IrrepLabel, canonical_element
from .operators import Operator, SpectralOperator, embed, kron, permutation_swap
from .projectors import (
    AlphaPair,
    Projector,
    catalog,
    default_carrier,
    projector_algebraic,
    projector_closed,
)
from .sampling import SamplePlan
from .scalars import (
    DEFAULT_PRECISION,
    QUICK_PRECISION,
    ExactScalar,
    FloatScalar,
    RootOfUnity,
    as_scalar,
    root_of_unity,
)

__all__ = [
    "AlphaPair",
    "CoeffTable",
    "ConvergenceError",
    "DEFAULT_PRECISION",
    "EquivalenceResult",
    "ExactScalar",
    "ExportRecord",
    "FZWeights",
    "FloatScalar",
    "IrrepLabel",
    "Operator",
    "Projector",
    "QUICK_PRECISION",
    "RootOfUnity",
    "SamplePlan",
    "SixVertexParams",
    "SpectralOperator",
    "VerificationReport",
    "as_scalar",
    "canonical_element",
    "catalog",
    "check_LLR",
    "check_adjoint_symmetry",
    "check_f_constraints",
    "check_g_identity",
    "check_projectors",
    "check_properties",
    "check_rLL",
    "check_str",
    "check_two_param",
    "check_ybe",
    "default_carrier",
    "default_tolerance",
    "descendant_even",
    "descendant_even_family",
    "descendant_family",
    "descendant_odd",
    "descendant_pm",
    "descendant_pm_family",
    "embed",
    "find_equivalence",
    "fz_limit_R",
    "fz_limit_closed_form",
    "fz_pole_positions",
    "kron",
    "l_ansatz",
    "l_operator",
    "l_operator_family",
    "permutation_swap",
    "perturbed_family",
    "projector_algebraic",
    "projector_closed",
    "root_of_unity",
    "round_trip_equal",
    "six_vertex_family",
    "six_vertex_r",
    "star_triangle_sides",
    "swapped_form",
    "two_param_R",
    "two_param_family",
]
