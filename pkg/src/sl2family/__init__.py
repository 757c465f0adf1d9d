"""Exact computer algebra for the sl2 deformation family over the projective line.

The package computes, in exact Gaussian-rational arithmetic: PBW normal
forms and Harish-Chandra projections in the enveloping algebra, sections
of the family of algebras over the two charts of the projective line,
the classification of algebraic families of Harish-Chandra modules, the
composition factors of every fiber with the closed-form distinguished
quotient, and the level-affine bijections between the admissible duals
of the generic fiber and of the motion-group fiber at infinity.
"""

from .scalars import (
    GR_I,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    Poly,
    chart_substitute,
    has_gaussian_sqrt,
    poly_eval,
    rational_sqrt,
)
from .pbw import (
    COMPACT,
    SPLIT,
    Sl2Basis,
    UEAElement,
    basis_by_name,
    casimir,
    change_basis,
    commutator,
    hc_projection,
    k_order,
    normal_multiply,
)
from .sheaf import (
    CHART_FINITE,
    CHART_INFINITY,
    CartanSection,
    FamilySection,
    Laurent,
    NotCentralError,
    ProjectivePoint,
    casimir_section,
    center_decompose,
    center_membership,
    gamma_family,
    is_regular_at,
    section_from_constant,
    to_finite_chart,
    to_infinity_chart,
)
from .families import (
    FamilyValidationError,
    InfChar,
    KTypeSet,
    LadderAction,
    ModuleFamily,
    family_from_json,
    in_tilde_class,
    infer_ktypes,
    infinitesimal_character,
    intertwiner_exists,
    ladder_action,
    make_family,
    wall_index,
)
from .fibers import (
    Decomposition,
    DualParam,
    Factor,
    FiberModule,
    ReducibilityLocus,
    WallRecord,
    composition_factors,
    dual_ktypes,
    evaluate_fiber,
    factor_containing_m,
    is_reducible,
    jantzen_quotient_formula,
    reducibility_points,
    scalar_to_json,
)
from .duals import (
    CharacterizationResult,
    DualAtlas,
    characterize_bijections,
    eta,
    eta_inverse,
    is_tempered,
    params_equivalent,
    verify_conjecture1,
    vogan_map,
)

__version__ = "0.1.0"

__all__ = [
    "GR_I",
    "GR_ONE",
    "GR_ZERO",
    "GaussianRational",
    "Poly",
    "chart_substitute",
    "has_gaussian_sqrt",
    "poly_eval",
    "rational_sqrt",
    "COMPACT",
    "SPLIT",
    "Sl2Basis",
    "UEAElement",
    "basis_by_name",
    "casimir",
    "change_basis",
    "commutator",
    "hc_projection",
    "k_order",
    "normal_multiply",
    "CHART_FINITE",
    "CHART_INFINITY",
    "CartanSection",
    "FamilySection",
    "Laurent",
    "NotCentralError",
    "ProjectivePoint",
    "casimir_section",
    "center_decompose",
    "center_membership",
    "gamma_family",
    "is_regular_at",
    "section_from_constant",
    "to_finite_chart",
    "to_infinity_chart",
    "FamilyValidationError",
    "InfChar",
    "KTypeSet",
    "LadderAction",
    "ModuleFamily",
    "family_from_json",
    "in_tilde_class",
    "infer_ktypes",
    "infinitesimal_character",
    "intertwiner_exists",
    "ladder_action",
    "make_family",
    "wall_index",
    "Decomposition",
    "DualParam",
    "Factor",
    "FiberModule",
    "ReducibilityLocus",
    "WallRecord",
    "composition_factors",
    "dual_ktypes",
    "evaluate_fiber",
    "factor_containing_m",
    "is_reducible",
    "jantzen_quotient_formula",
    "reducibility_points",
    "scalar_to_json",
    "CharacterizationResult",
    "DualAtlas",
    "characterize_bijections",
    "eta",
    "eta_inverse",
    "is_tempered",
    "params_equivalent",
    "verify_conjecture1",
    "vogan_map",
    "__version__",
]
