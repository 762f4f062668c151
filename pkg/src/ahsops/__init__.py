"""Exact computation of standard invariant differential operators on
|1|-graded (AHS) parabolic geometries."""
from .catalog import AhsStructure, extremal_weights, make_structure, parse_structure, smallness_check
from .casimir import (
    OperatorData,
    a_constants,
    c_constant,
    c_ladder,
    casimir_eigenvalue,
    conformal_weight,
    operator_data,
    standard_operator_data,
)
from .coeffs import CoeffParams, MultiIndex, a_coefficient, b_closed_form, b_recursive, brace_n
from .decomp import (
    decompose_g1_tensor,
    klimyk,
    prv_witness,
    unique_directed_component,
    weight_system,
)
from .operator import build_formula, enumerate_terms, obstruction_audit, parse_json, render
from .rootsystem import RootSystem, SimpleType, Weight, build

__all__ = [
    "AhsStructure", "CoeffParams", "MultiIndex", "OperatorData", "RootSystem", "SimpleType", "Weight",
    "a_coefficient", "a_constants", "b_closed_form", "b_recursive", "brace_n", "build", "build_formula",
    "c_constant", "c_ladder", "casimir_eigenvalue", "conformal_weight", "decompose_g1_tensor",
    "enumerate_terms", "extremal_weights", "klimyk", "make_structure", "obstruction_audit",
    "operator_data", "parse_json", "parse_structure", "prv_witness", "render", "smallness_check",
    "standard_operator_data", "unique_directed_component", "weight_system",
]
