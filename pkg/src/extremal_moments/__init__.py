"""Truncated moment problems in the extremal case.

Given finitely many prescribed moments, decide whether an atomic
representing measure exists when the rank of the moment matrix equals the
cardinality of the associated algebraic variety, and recover the unique
measure when it does.
"""

from .polycore import (
    InputError,
    MINUS_INFINITY,
    Polynomial,
    basis_size,
    format_scalar,
    monomial_basis,
    monomial_to_string,
    parse_scalar,
    poly_to_string,
    total_degree,
)
from .moments import (
    DEFAULT_POLICY,
    FlatnessVerdict,
    KernelReport,
    MomentMatrix,
    Multisequence,
    PsdVerdict,
    RecursivenessVerdict,
    TolerancePolicy,
    build_moment_matrix,
    dump_multisequence,
    flatness_check,
    load_multisequence,
    multisequence_combine,
    psd_check,
    rank_kernel,
    recursiveness_check,
    riesz,
)
from .variety import (
    EvalMatrix,
    InjectivityVerdict,
    VandermondeReport,
    VarietyReport,
    bivariate_gcd,
    build_W,
    compute_variety,
    dump_points,
    eval_matrix_rank,
    hilbert_function,
    injectivity_check,
    load_points,
    resultant_eliminate_y,
    vandermonde_VB,
)
from .consistency import (
    CertificateVerdict,
    ConsistencyVerdict,
    ReducedVerdict,
    SignedRepresentation,
    compute_h,
    compute_k_from_extension,
    consistency_check,
    reduced_consistency_test,
    signed_representation,
    simple_zero_certificate,
)
from .extremal import (
    AtomicMeasure,
    SolveReport,
    VerificationReport,
    dump_measure,
    load_measure,
    solve_extremal,
    verify_measure,
)
from .extension import (
    ExtensionReport,
    ExtensionSearchReport,
    FlatExtensionVerdict,
    TightnessVerdict,
    extend_via_measure,
    extension_search,
    flat_extension_check,
    propagate_recursive_extension,
    tightness_check,
)
from .synth import (
    ComplexMomentData,
    Derivation,
    SignedFunctional,
    beta_from_atoms,
    beta_from_functional,
    complex_moment_matrix,
    complex_to_real,
    dump_functional,
    example14_gamma,
    load_functional,
    moments_of_atoms,
)
from .cli import AnalysisReport, analyze_beta

__all__ = [
    "AnalysisReport",
    "AtomicMeasure",
    "CertificateVerdict",
    "ComplexMomentData",
    "ConsistencyVerdict",
    "DEFAULT_POLICY",
    "Derivation",
    "EvalMatrix",
    "ExtensionReport",
    "ExtensionSearchReport",
    "FlatExtensionVerdict",
    "FlatnessVerdict",
    "InjectivityVerdict",
    "InputError",
    "KernelReport",
    "MINUS_INFINITY",
    "MomentMatrix",
    "Multisequence",
    "Polynomial",
    "PsdVerdict",
    "RecursivenessVerdict",
    "ReducedVerdict",
    "SignedFunctional",
    "SignedRepresentation",
    "SolveReport",
    "TightnessVerdict",
    "TolerancePolicy",
    "VandermondeReport",
    "VarietyReport",
    "VerificationReport",
    "analyze_beta",
    "basis_size",
    "beta_from_atoms",
    "beta_from_functional",
    "bivariate_gcd",
    "build_W",
    "build_moment_matrix",
    "complex_moment_matrix",
    "complex_to_real",
    "compute_h",
    "compute_k_from_extension",
    "compute_variety",
    "consistency_check",
    "dump_functional",
    "dump_measure",
    "dump_multisequence",
    "dump_points",
    "eval_matrix_rank",
    "example14_gamma",
    "extend_via_measure",
    "extension_search",
    "flat_extension_check",
    "flatness_check",
    "format_scalar",
    "hilbert_function",
    "injectivity_check",
    "load_functional",
    "load_measure",
    "load_multisequence",
    "load_points",
    "moments_of_atoms",
    "monomial_basis",
    "monomial_to_string",
    "multisequence_combine",
    "parse_scalar",
    "poly_to_string",
    "propagate_recursive_extension",
    "psd_check",
    "rank_kernel",
    "recursiveness_check",
    "reduced_consistency_test",
    "resultant_eliminate_y",
    "riesz",
    "signed_representation",
    "simple_zero_certificate",
    "solve_extremal",
    "tightness_check",
    "total_degree",
    "vandermonde_VB",
    "verify_measure",
]

__version__ = "0.1.0"
