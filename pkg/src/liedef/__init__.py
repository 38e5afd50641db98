"""Exact computer algebra for deformations of finite-dimensional Lie algebras.

The package computes, over the rationals and without approximation:
presentations of the local rings that classify deformations (versal
deformations and their obstructions), formal-rigidity verdicts, and
families of graded nilpotent algebras built by successive central
extensions along a list of torus weights.
"""

from .cochain import (
    Cochain,
    algebra_cochain,
    cochain_algebra,
    cochain_basis,
    differential,
    differential_matrix,
    nr_bracket,
)
from .cohomology import (
    CohomologyReport,
    DerivationSet,
    cohomology,
    derivations,
    diagonal_symmetry_weights,
    hodge_split,
    inner_derivations,
    is_derivation,
)
from .documents import (
    AlgebraDocument,
    DocumentError,
    TorusData,
    load_document,
    parse_document,
    validate_closure,
)
from .gauge import DeformationSeries, GaugeTransform, gauge_act
from .graded import (
    ExtensionFiberReport,
    FiliationError,
    FiliationResult,
    FiliationState,
    GradedIndexSet,
    GradedJacobiSystem,
    PathReport,
    StepHints,
    StratumReport,
    WeightPath,
    WeightSpaceReport,
    build_graded_index_set,
    central_extension_step,
    filiation_run,
    graded_jacobi_system,
    h2_weight_space,
    stratum_check,
    validate_weight_path,
)
from .ideals import (
    DEFAULT_DEGREE_CAP,
    GroebnerResult,
    KDimReport,
    PolyIdeal,
    QuotientPresentation,
    groebner_basis,
    localize_at,
    monomial_ideal_is_prime,
    monomial_primes_over,
    nilpotency_order,
    normal_form,
    quotient_k_dimension,
)
from .liealg import JacobiReport, LieAlgebra, check_jacobi
from .localfrac import LocalFraction, poly_on_localfracs
from .poly import SparsePoly, parse_poly, poly_substitute
from .reduction import (
    HypothesisReport,
    ReductionMaps,
    SemidirectData,
    check_reduction_hypotheses,
    cochain_embed,
    semidirect_assemble,
)
from .series import TruncatedSeries, evaluate_poly_on_series
from .solver import (
    AdmissibleSet,
    MaurerCartanSolution,
    RigidityReport,
    SlicePresentation,
    admissible_set,
    normalize_to_slice,
    rigidity_test,
    slice_presentation,
    solve_versal,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSet",
    "AlgebraDocument",
    "Cochain",
    "CohomologyReport",
    "DEFAULT_DEGREE_CAP",
    "DeformationSeries",
    "DerivationSet",
    "DocumentError",
    "ExtensionFiberReport",
    "FiliationError",
    "FiliationResult",
    "FiliationState",
    "GaugeTransform",
    "GradedIndexSet",
    "GradedJacobiSystem",
    "GroebnerResult",
    "HypothesisReport",
    "JacobiReport",
    "KDimReport",
    "LieAlgebra",
    "LocalFraction",
    "MaurerCartanSolution",
    "PathReport",
    "PolyIdeal",
    "QuotientPresentation",
    "ReductionMaps",
    "RigidityReport",
    "SemidirectData",
    "SlicePresentation",
    "SparsePoly",
    "StepHints",
    "StratumReport",
    "TorusData",
    "TruncatedSeries",
    "WeightPath",
    "WeightSpaceReport",
    "admissible_set",
    "algebra_cochain",
    "build_graded_index_set",
    "central_extension_step",
    "check_jacobi",
    "check_reduction_hypotheses",
    "cochain_algebra",
    "cochain_basis",
    "cochain_embed",
    "cohomology",
    "derivations",
    "diagonal_symmetry_weights",
    "differential",
    "differential_matrix",
    "evaluate_poly_on_series",
    "filiation_run",
    "gauge_act",
    "graded_jacobi_system",
    "groebner_basis",
    "h2_weight_space",
    "hodge_split",
    "inner_derivations",
    "is_derivation",
    "load_document",
    "localize_at",
    "monomial_ideal_is_prime",
    "monomial_primes_over",
    "nilpotency_order",
    "normal_form",
    "normalize_to_slice",
    "nr_bracket",
    "parse_document",
    "parse_poly",
    "poly_on_localfracs",
    "poly_substitute",
    "quotient_k_dimension",
    "rigidity_test",
    "semidirect_assemble",
    "slice_presentation",
    "solve_versal",
    "validate_closure",
    "validate_weight_path",
]
