"""Minimum distance estimators for linear regression and autoregression.

Estimation minimizes Cramer-von Mises type distances between weighted
empirical processes of residuals and of negated residuals, against a
symmetric integrating measure (Lebesgue or the point mass at zero).  The
package also ships the classical competitors (OLS, conditional least
squares, Cochrane-Orcutt) and a seeded Monte Carlo harness for bias/SE/MSE
comparisons.
"""

from .ar_mde import ARData, ArEstimate, ar_objective, koul_ar_mde, lag_matrix
from .baselines import CoResult, OlsFit, ar_cls, cochrane_orcutt, ols
from .errors import (
    CampaignError,
    DegenerateSeriesError,
    EstimationError,
    InvalidMeasureError,
    OrderError,
    RankDeficiencyError,
    ShapeError,
)
from .linalg import inv_sqrt_sym, solve_ls
from .lr_mde import (
    LrEstimate,
    RegressionData,
    default_weights,
    koul_lr_mde,
    objective_continuous,
    objective_degenerate,
    primal_objective_exact,
    sgn,
)
from .measures import IntegratingMeasure, eval_h, measure_from_name, validate_measure
from .optimize import OptimizerDiagnostics, OptimizerOptions, minimize_simplex
from .simulate import (
    ErrorDistribution,
    McConfig,
    McReport,
    McRow,
    ar_recursion,
    default_config,
    gen_ar,
    gen_lr,
    gen_lr_ar,
    monte_carlo,
    sample_errors,
)
from .two_stage import StageEstimate, TwoStageResult, koul_2stage_mde, transform_data

__version__ = "0.1.0"

__all__ = [
    "ARData",
    "ArEstimate",
    "CampaignError",
    "CoResult",
    "DegenerateSeriesError",
    "ErrorDistribution",
    "EstimationError",
    "IntegratingMeasure",
    "InvalidMeasureError",
    "LrEstimate",
    "McConfig",
    "McReport",
    "McRow",
    "OlsFit",
    "OptimizerDiagnostics",
    "OptimizerOptions",
    "OrderError",
    "RankDeficiencyError",
    "RegressionData",
    "ShapeError",
    "StageEstimate",
    "TwoStageResult",
    "ar_cls",
    "ar_objective",
    "ar_recursion",
    "cochrane_orcutt",
    "default_config",
    "default_weights",
    "eval_h",
    "gen_ar",
    "gen_lr",
    "gen_lr_ar",
    "inv_sqrt_sym",
    "koul_2stage_mde",
    "koul_ar_mde",
    "koul_lr_mde",
    "lag_matrix",
    "measure_from_name",
    "minimize_simplex",
    "monte_carlo",
    "objective_continuous",
    "objective_degenerate",
    "ols",
    "primal_objective_exact",
    "sample_errors",
    "sgn",
    "solve_ls",
    "transform_data",
    "validate_measure",
]
