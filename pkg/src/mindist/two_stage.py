"""Two-stage minimum distance estimation for regression with AR errors.

When the regression errors follow an autoregression of known order q, the
model can be quasi-differenced: Y_i - sum_j rho_j Y_{i-j} regressed on
x_i - sum_j rho_j x_{i-j} has independent innovations.  Stage 1 fits the
regression ignoring the error structure and estimates rho from its
residuals; stage 2 refits the regression on the quasi-differenced data and
re-estimates rho from the stage-2 residuals of the original model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ar_mde import ARData, koul_ar_mde
from .errors import DegenerateSeriesError, OrderError
from .lr_mde import LrEstimate, RegressionData, koul_lr_mde
from .measures import IntegratingMeasure
from .optimize import OptimizerOptions

# Residual series whose sup-norm falls below this (relative to the response
# scale) are treated as identically zero: the lag cross-product would be pure
# rounding noise.  Keeps noise-free inputs runnable instead of failing.
_ZERO_SERIES_RTOL = 1e-10


@dataclass(frozen=True)
class StageEstimate:
    """One stage's output: regression coefficients, residuals of the
    original model (length n), AR coefficients estimated from those
    residuals, and whether the residual series was degenerate (rho forced
    to zero)."""

    betahat: np.ndarray
    residuals: np.ndarray
    rhohat: np.ndarray
    rho_degenerate: bool = False


@dataclass(frozen=True)
class TwoStageResult:
    stage1: StageEstimate
    stage2: StageEstimate


def transform_data(y, x, rho) -> tuple[np.ndarray, np.ndarray]:
    """Quasi-difference the data with AR coefficients ``rho``.

    Returns (Y~, X~) of length n - q with
    Y~_i = Y_{i+q} - sum_j rho_j Y_{i+q-j} and the same row transform for X.
    With rho = 0 this is exact row dropping.
    """
    yv = np.asarray(y, dtype=float)
    xv = np.asarray(x, dtype=float)
    rv = np.atleast_1d(np.asarray(rho, dtype=float))
    n = yv.shape[0]
    q = rv.shape[0]
    if q >= n:
        raise OrderError(f"order {q} must be smaller than sample size {n}")
    yt = yv[q:].copy()
    xt = xv[q:].copy()
    for j, coef in enumerate(rv, start=1):
        if coef == 0.0:
            continue
        yt -= coef * yv[q - j : n - j]
        xt -= coef * xv[q - j : n - j]
    return yt, xt


def _rho_from_residuals(
    residuals: np.ndarray,
    order: int,
    measure: IntegratingMeasure | None,
    options: OptimizerOptions | None,
    response_scale: float,
) -> tuple[np.ndarray, bool]:
    if np.max(np.abs(residuals)) <= _ZERO_SERIES_RTOL * max(1.0, response_scale):
        return np.zeros(order), True
    try:
        fit = koul_ar_mde(ARData(residuals, order), measure, options)
    except DegenerateSeriesError:
        return np.zeros(order), True
    return fit.rhohat, False


def koul_2stage_mde(
    y,
    x,
    order: int,
    weights=None,
    reg_measure: IntegratingMeasure | None = None,
    ar_measure: IntegratingMeasure | None = None,
    options: OptimizerOptions | None = None,
) -> TwoStageResult:
    """Two-stage minimum distance fit of (beta, rho).

    Stage 1: fit the regression by minimum distance, take residuals of the
    original model, and estimate rho from them.  Stage 2: quasi-difference
    the data with the stage-1 rho, refit the regression on the transformed
    data, recompute residuals Y - X betahat on the original model (length n),
    and re-estimate rho from those.

    The default weight matrix is recomputed from the transformed design in
    stage 2; an explicit weight matrix is truncated to its last n - q rows.
    A residual series that is identically zero yields rho = 0 with the
    ``rho_degenerate`` flag set instead of failing.
    """
    data = RegressionData(y, x)
    q = int(order)
    if not 1 <= q < data.n:
        raise OrderError(f"need 1 <= order < n, got order={q}, n={data.n}")
    scale = float(np.max(np.abs(data.y)))

    fit1: LrEstimate = koul_lr_mde(data, weights, reg_measure, options)
    rho1, deg1 = _rho_from_residuals(fit1.residuals, q, ar_measure, options, scale)

    y_t, x_t = transform_data(data.y, data.x, rho1)
    weights2 = None if weights is None else np.asarray(weights, dtype=float)[q:, :]
    fit2 = koul_lr_mde(RegressionData(y_t, x_t), weights2, reg_measure, options)
    residuals2 = data.y - data.x @ fit2.betahat
    rho2, deg2 = _rho_from_residuals(residuals2, q, ar_measure, options, scale)

    return TwoStageResult(
        stage1=StageEstimate(fit1.betahat, fit1.residuals, rho1, deg1),
        stage2=StageEstimate(fit2.betahat, residuals2, rho2, deg2),
    )
