"""Exact computations with finite-dimensional n-Hom-Lie algebras."""

from .cohomology import (
    Cochain,
    CochainComplex,
    coboundary,
    coboundary_dim,
    coboundary_matrix,
    cochain_basis,
    cocycle_dim,
    cohomology_dim,
)
from .core import (
    AltMap,
    NHomLieAlgebra,
    Wedge,
    alpha_power,
    bracket_eval,
    check_algebra,
    check_automorphism,
    check_hom_fundamental,
    check_hom_leibniz_F,
    fundamental_bracket,
    transport_structure,
    wedge_normalize,
)
from .deformation import (
    DeformationFamily,
    check_deformation,
    check_trivial,
    deform_from_nijenhuis,
    deformed_algebra,
    is_hom_nijenhuis,
    is_hom_o_operator,
    nijenhuis_bracket,
    o_operator_lift,
    omega_compose,
)
from .derivation import (
    ad_beta,
    check_der_subalgebra,
    check_inn_ideal,
    derivation_basis,
    inner_derivation,
    is_derivation,
    op_bracket,
)
from .errors import InputError, NHomLieError, StructuralError
from .extension import (
    GeneralizedDerivation,
    extend,
    extension_isomorphism,
    inner_generalized_derivation,
    is_generalized_derivation,
    reduce_arity,
)
from .linalg import Matrix
from .report import Defect, Report
from .representation import (
    Representation,
    adjoint,
    check_representation,
    dual_representation,
    naive_dual,
    semidirect_product,
)

__version__ = "0.1.0"
