"""Two-sided, operator-weighted frame inequalities on finite sample grids.

The package models discretized time-frequency systems (translations,
modulations, and coprime dilations of a window signal on a cyclic grid),
computes classical and operator-weighted frame bounds as generalized
eigenvalue problems, and verifies the criteria that connect synthesis-side
range conditions, hyponormality, and combined systems to those bounds.
"""

from .errors import (
    DimensionMismatch,
    FramekitError,
    NoConvergence,
    NonCoprimeDilation,
    NotAFrame,
    NotHermitian,
    NotHyponormal,
    NotParseval,
    NotSquare,
    NotThetaFrame,
    OffGridEndpoints,
    OffGridFrequency,
    OffGridShift,
    PartitionNotDisjoint,
    PartitionNotExhaustive,
    SingularU,
)
from .frame_core import (
    FrameBounds,
    FrameSystem,
    analysis_matrix,
    canonical_basis,
    frame_operator,
    optimal_bounds,
    reconstruct,
    synthesis_matrix,
    system_from_json,
    system_to_json,
)
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    adjoint,
    herm_eig,
    hermitize,
    is_psd,
    numerical_rank,
    op_norm,
    operator_from_json,
    operator_to_json,
    pinv,
    range_inclusion,
    svd,
)
from .operator_theory import (
    DouglasReport,
    HyponormalityReport,
    PencilBound,
    RelativeHyponormalityReport,
    djordjevic_hyponormal,
    douglas_check,
    hyponormality,
    pencil_inf,
    pencil_sup,
    relative_hyponormality,
)
from .registry import ExampleOutcome, case_code, case_names, run_case
from .signal_space import (
    Grid,
    Signal,
    TruncatedSequenceSpace,
    dilate,
    indicator,
    modulate,
    mult_operator,
    operator_of,
    signal_from_json,
    signal_to_json,
    translate,
)
from .suites import SUITES, SuiteResult, run_suite
from .theta_frame import (
    ConstructionReport,
    KFrameReport,
    PinvChainReport,
    ThetaFrameReport,
    ThetaTightReport,
    TransformReport,
    check_k_frame,
    check_theta_frame,
    pseudoinverse_bound_chain,
    theta_tight_check,
    theta_to_k_bounds,
    tight_frame_from_hyponormal,
    transform_frame_check,
)
from .wavepacket import (
    FiniteSumReport,
    FiniteSumSpec,
    PartitionCombination,
    PartitionDominationReport,
    SynthesisCriterion,
    WavePacketParams,
    analysis_into_coordinates,
    finite_sum_criterion_check,
    finite_sum_system,
    generate_system,
    partition_combination,
    partition_domination_check,
    synthesis_criterion_check,
    system_from_signals,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "ConstructionReport",
    "DimensionMismatch",
    "DouglasReport",
    "ExampleOutcome",
    "FiniteSumReport",
    "FiniteSumSpec",
    "FrameBounds",
    "FrameSystem",
    "FramekitError",
    "Grid",
    "HyponormalityReport",
    "KFrameReport",
    "NoConvergence",
    "NonCoprimeDilation",
    "NotAFrame",
    "NotHermitian",
    "NotHyponormal",
    "NotParseval",
    "NotSquare",
    "NotThetaFrame",
    "OffGridEndpoints",
    "OffGridFrequency",
    "OffGridShift",
    "PartitionCombination",
    "PartitionDominationReport",
    "PartitionNotDisjoint",
    "PartitionNotExhaustive",
    "PencilBound",
    "PinvChainReport",
    "RelativeHyponormalityReport",
    "SUITES",
    "Signal",
    "SingularU",
    "SuiteResult",
    "SynthesisCriterion",
    "ThetaFrameReport",
    "ThetaTightReport",
    "Tolerance",
    "TransformReport",
    "TruncatedSequenceSpace",
    "WavePacketParams",
    "adjoint",
    "analysis_into_coordinates",
    "analysis_matrix",
    "canonical_basis",
    "case_code",
    "case_names",
    "check_k_frame",
    "check_theta_frame",
    "dilate",
    "djordjevic_hyponormal",
    "douglas_check",
    "finite_sum_criterion_check",
    "finite_sum_system",
    "frame_operator",
    "generate_system",
    "herm_eig",
    "hermitize",
    "hyponormality",
    "indicator",
    "is_psd",
    "modulate",
    "mult_operator",
    "numerical_rank",
    "op_norm",
    "operator_from_json",
    "operator_of",
    "operator_to_json",
    "optimal_bounds",
    "partition_combination",
    "partition_domination_check",
    "pencil_inf",
    "pencil_sup",
    "pinv",
    "pseudoinverse_bound_chain",
    "range_inclusion",
    "reconstruct",
    "relative_hyponormality",
    "run_case",
    "run_suite",
    "signal_from_json",
    "signal_to_json",
    "svd",
    "synthesis_criterion_check",
    "synthesis_matrix",
    "system_from_json",
    "system_from_signals",
    "system_to_json",
    "theta_tight_check",
    "theta_to_k_bounds",
    "tight_frame_from_hyponormal",
    "transform_frame_check",
    "translate",
]
