"""Construction and exact verification of absorption-emission quantum codes."""

from .exactnum import (
    RadicalSum,
    Rational,
    SqrtRational,
    normalize,
    radsum_add,
    radsum_is_zero,
    sqrt_mul,
    squarefree_decompose,
    to_float,
)
from .combinatorics import (
    FCoeffArgs,
    binom,
    check_corollary_B3,
    check_identity_B2,
    check_lemma_B1,
    check_lemma_B4,
    f_coeff,
)
from .angular import (
    CGIndex,
    HalfInt,
    cg_specialized,
    cg_transition,
    clebsch_gordan,
    wigner_D,
)
from .codes import (
    CodeBasis,
    CodeKind,
    GmdeParams,
    construct_ae_gmde,
    construct_pi_gmde,
    fixtures,
    map_e,
    map_f,
    map_h,
)
from .errors import ErrorOp, ErrorSet, apply, build_ae_error_set, build_spin_error_set
from .klverify import (
    ConditionReport,
    KLReport,
    check_conditions,
    check_kl_correct,
    check_kl_detect,
    cross_validate,
)
from .search import SearchResult, SearchSpec, enumerate_and_search, solve_staggered
from .covariance import (
    CovarianceReport,
    GroupSpec,
    binary_dihedral_group,
    binary_icosahedral_group,
    binary_octahedral_group,
    check_covariance,
    logical_action,
)

__version__ = "0.1.0"

__all__ = [
    "RadicalSum",
    "Rational",
    "SqrtRational",
    "normalize",
    "radsum_add",
    "radsum_is_zero",
    "sqrt_mul",
    "squarefree_decompose",
    "to_float",
    "FCoeffArgs",
    "binom",
    "check_corollary_B3",
    "check_identity_B2",
    "check_lemma_B1",
    "check_lemma_B4",
    "f_coeff",
    "CGIndex",
    "HalfInt",
    "cg_specialized",
    "cg_transition",
    "clebsch_gordan",
    "wigner_D",
    "CodeBasis",
    "CodeKind",
    "GmdeParams",
    "construct_ae_gmde",
    "construct_pi_gmde",
    "fixtures",
    "map_e",
    "map_f",
    "map_h",
    "ErrorOp",
    "ErrorSet",
    "apply",
    "build_ae_error_set",
    "build_spin_error_set",
    "ConditionReport",
    "KLReport",
    "check_conditions",
    "check_kl_correct",
    "check_kl_detect",
    "cross_validate",
    "SearchResult",
    "SearchSpec",
    "enumerate_and_search",
    "solve_staggered",
    "CovarianceReport",
    "GroupSpec",
    "binary_dihedral_group",
    "binary_icosahedral_group",
    "binary_octahedral_group",
    "check_covariance",
    "logical_action",
]
