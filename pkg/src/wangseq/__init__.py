"""Wang exact-sequence calculus for section algebras of bundles over spheres."""

from .extension import (
    ExtensionAnswer,
    ExtensionProblem,
    brute_force_extensions,
    enumerate_extensions,
    ext_classes,
)
from .fgab import (
    FgGroup,
    GroupHom,
    IntMatrix,
    LocalizationRing,
    SmithDecomposition,
    direct_sum,
    format_group,
    group_from_presentation,
    hom_invariants,
    hom_well_defined,
    localize,
    localize_hom,
    parse_group_name,
    primary_decomposition,
    smith_normal_form,
)
from .tables import build_hopf_m2_problem, hopf_samelson_d4, k_coefficients, u2_homotopy
from .wang import (
    DegreeResult,
    Grading,
    KTheoryResult,
    WangProblem,
    d3_from_dixmier_douady,
    easy_thom_check,
    localize_problem,
    solve_homotopy_degree,
    solve_homotopy_range,
    solve_ktheory,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeResult",
    "ExtensionAnswer",
    "ExtensionProblem",
    "FgGroup",
    "Grading",
    "GroupHom",
    "IntMatrix",
    "KTheoryResult",
    "LocalizationRing",
    "SmithDecomposition",
    "WangProblem",
    "brute_force_extensions",
    "build_hopf_m2_problem",
    "d3_from_dixmier_douady",
    "direct_sum",
    "easy_thom_check",
    "enumerate_extensions",
    "ext_classes",
    "format_group",
    "group_from_presentation",
    "hom_invariants",
    "hom_well_defined",
    "hopf_samelson_d4",
    "k_coefficients",
    "localize",
    "localize_hom",
    "localize_problem",
    "parse_group_name",
    "primary_decomposition",
    "smith_normal_form",
    "solve_homotopy_degree",
    "solve_homotopy_range",
    "solve_ktheory",
    "u2_homotopy",
]
