"""Weak-sparsity precision matrix estimation.

Column-wise L1-penalized solves against a plug-in covariance pilot,
with robust (Huber), rank-based (Spearman, Kendall) and Kronecker
(matrix-variate) pilots, replicated simulation scenarios, and finite
sample error-bound checks.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundCheck,
    BoundLine,
    ErrorReport,
    check_bounds,
    error_report,
    evaluate_bounds,
    oracle_tune,
)
from .covariance import (
    CovarianceEstimate,
    EPSILON_DEFAULT,
    HUBER_K_DEFAULT,
    as_data_matrix,
    gemini_covariances,
    huber_covariance,
    huber_location,
    huber_pilot_matrix,
    huber_psi,
    kendall_tau_matrix,
    psd_project,
    rank_correlation_matrix,
    rank_pilot_matrix,
    sample_covariance,
    spearman_rho_matrix,
)
from .exceptions import (
    BadDimension,
    ConvergenceFailure,
    DegenerateAxis,
    DegenerateColumn,
    DimensionMismatch,
    DimensionOverflow,
    EmptyPath,
    NonPositiveDiagonal,
    NotCorrelation,
    NotPositiveDefinite,
    NuTooSmall,
    RhoOutOfRange,
)
from .linalg import (
    EigenDecomp,
    as_symmetric,
    cholesky,
    invert_spd,
    is_spd,
    kronecker,
    matrix_norm,
    sym_eigen,
    symmetrize,
)
from .simulate import (
    RNG_ALGORITHM,
    SparsitySummary,
    TruthSpec,
    column_lq_norms,
    correlation_of_inverse,
    diamond_block,
    make_diamond_precision,
    make_toeplitz_precision,
    replication_rng,
    sample_gaussian,
    sample_matrix_normal,
    sample_mvt,
    sample_nonparanormal,
    sparsity_summary,
    toeplitz_sparsity_limit,
)
from .solver import (
    ColumnSolution,
    GeminiPrecision,
    KktReport,
    LambdaPath,
    PrecisionEstimate,
    column_objective,
    default_lambda_grid,
    gemini_precision,
    kkt_report,
    scio_column,
    scio_estimate,
    scio_path,
    soft_threshold,
)
from .scenarios import (
    ResultRow,
    ScenarioConfig,
    ScenarioResult,
    diamond_rho_grid,
    mean_curves,
    run_scenario,
    write_results_csv,
    write_timings_csv,
)

__all__ = [
    "__version__",
    "BadDimension",
    "BoundCheck",
    "BoundLine",
    "ColumnSolution",
    "ConvergenceFailure",
    "CovarianceEstimate",
    "DegenerateAxis",
    "DegenerateColumn",
    "DimensionMismatch",
    "DimensionOverflow",
    "EigenDecomp",
    "EmptyPath",
    "EPSILON_DEFAULT",
    "ErrorReport",
    "GeminiPrecision",
    "HUBER_K_DEFAULT",
    "KktReport",
    "LambdaPath",
    "NonPositiveDiagonal",
    "NotCorrelation",
    "NotPositiveDefinite",
    "NuTooSmall",
    "PrecisionEstimate",
    "ResultRow",
    "RhoOutOfRange",
    "RNG_ALGORITHM",
    "ScenarioConfig",
    "ScenarioResult",
    "SparsitySummary",
    "TruthSpec",
    "as_data_matrix",
    "as_symmetric",
    "check_bounds",
    "cholesky",
    "column_lq_norms",
    "column_objective",
    "correlation_of_inverse",
    "default_lambda_grid",
    "diamond_block",
    "diamond_rho_grid",
    "error_report",
    "evaluate_bounds",
    "gemini_covariances",
    "gemini_precision",
    "huber_covariance",
    "huber_location",
    "huber_pilot_matrix",
    "huber_psi",
    "invert_spd",
    "is_spd",
    "kendall_tau_matrix",
    "kkt_report",
    "kronecker",
    "make_diamond_precision",
    "make_toeplitz_precision",
    "matrix_norm",
    "mean_curves",
    "oracle_tune",
    "psd_project",
    "rank_correlation_matrix",
    "rank_pilot_matrix",
    "replication_rng",
    "run_scenario",
    "sample_covariance",
    "sample_gaussian",
    "sample_matrix_normal",
    "sample_mvt",
    "sample_nonparanormal",
    "scio_column",
    "scio_estimate",
    "scio_path",
    "soft_threshold",
    "sparsity_summary",
    "spearman_rho_matrix",
    "sym_eigen",
    "symmetrize",
    "toeplitz_sparsity_limit",
    "write_results_csv",
    "write_timings_csv",
]
