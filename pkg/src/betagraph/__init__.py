"""Maximum-likelihood estimation for directed graphs with beta-distributed edge weights."""
from .errors import (
    BetaGraphError,
    ConvergenceError,
    DegenerateStatsError,
    DivergenceError,
    DomainError,
    IngestError,
    NumericalError,
    ValidationError,
)
from .estimator import (
    EstimationReport,
    EstimatorConfig,
    compute_M,
    estimate,
    init_params,
    iterate_step,
    jacobian_column_sums,
    jacobian_l1_norm,
)
from .generator import GeneratorConfig, generate_graph, recovery_experiment, sample_beta
from .ingest import RawFlowMatrix, load_matrix, normalize_counts, read_params, save_matrix, write_params
from .model import (
    EdgeWeightMatrix,
    MeanParams,
    Params,
    SufficientStats,
    check_stats_bound,
    log_likelihood,
    mean_map,
    ml_residuals,
    sufficient_stats,
)
from .special import digamma, inverse_digamma, lgamma, solve_epsilon, trigamma

__version__ = "0.1.0"
