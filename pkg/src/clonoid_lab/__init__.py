"""Exact computations with clonoids between finite modules."""

from .chain import ascending_chain, chain_function
from .clonoid import (
    Clonoid,
    clonoid_compare,
    clonoid_generate,
    clonoid_join,
    clonoid_lift,
    clonoid_meet,
    clonoid_restrict,
    enumerate_clonoids,
    generated_by_nary,
)
from .constructive import fN_operator, gM_operator, identity_minor_operator_on
from .funcspace import FuncTable, delta, delta_basis, func_minor, hom_group, pol_check, span_basis, span_contains
from .howell import howell_form
from .interpolation import (
    CoeffSolution,
    Infeasible,
    build_identity_operator,
    solve_coeffs_linear,
    verify_affine_malcev,
    verify_example_binary,
)
from .matrices import MatrixOverR
from .modules import FiniteModule, cover_components, find_transitive_matrix, module_make, submodules
from .operators import MinorOperator, op_apply, op_combine_difference, op_compose
from .rank import inner_rank, matrices_of_rank_at_most
from .report import VerificationReport
from .rings import FiniteRing, jacobson_radical, local_decomposition, ring_make, zmod
from .separation import commutative_spotcheck, separation_jacobson, separation_noncyclic

__version__ = "0.1.0"
