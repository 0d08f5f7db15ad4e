"""Minimum distance estimation for autoregression of known order.

A series X following X_i = Z_i' r + xi_i with Z_i = (X_{i-1}, ..., X_{i-q})'
is fit by minimizing the same family of distances as the regression case,
with response X, design equal to the zero-padded lag matrix, and weights
d_ik = X_{i-k} / sqrt(n) (the within-class variance-optimal choice of lag
weighting).  Presample values are zero, so the first q rows of the lag
matrix are padded with zeros rather than dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSeriesError,
    InvalidMeasureError,
    OrderError,
    RankDeficiencyError,
    ShapeError,
)
from .linalg import solve_ls
from .lr_mde import (
    RegressionData,
    _dual_value,
    _sign_value,
    objective_continuous,
    objective_degenerate,
)
from .measures import IntegratingMeasure, eval_h, validate_measure
from .optimize import OptimizerDiagnostics, OptimizerOptions, minimize_simplex


@dataclass(frozen=True)
class ARData:
    """Observed series and the (known) autoregression order."""

    series: np.ndarray
    order: int

    def __post_init__(self) -> None:
        s = np.asarray(self.series, dtype=float)
        if s.ndim != 1:
            raise ShapeError(f"series must be 1-d, got ndim={s.ndim}")
        if not np.all(np.isfinite(s)):
            raise ShapeError("series contains non-finite entries")
        q = int(self.order)
        if q < 1:
            raise OrderError(f"order must be >= 1, got {q}")
        if s.shape[0] <= q:
            raise OrderError(f"series length {s.shape[0]} must exceed order {q}")
        object.__setattr__(self, "series", s)
        object.__setattr__(self, "order", q)

    @property
    def n(self) -> int:
        return self.series.shape[0]


@dataclass(frozen=True)
class ArEstimate:
    """Fit result: lag coefficients, residuals X - Z rhohat over all n rows
    (zero-padded Z), the objective at the minimizer, and diagnostics."""

    rhohat: np.ndarray
    residuals: np.ndarray
    objective_at_min: float
    diagnostics: OptimizerDiagnostics


def lag_matrix(series, order: int) -> np.ndarray:
    """n-by-q matrix with entry (i, j) = X_{i-j}, zero when i - j < 1.

    Row i is Z_i = (X_{i-1}, ..., X_{i-q}) with zero padding for presample
    indices.
    """
    s = np.asarray(series, dtype=float)
    if s.ndim != 1:
        raise ShapeError(f"series must be 1-d, got ndim={s.ndim}")
    n = s.shape[0]
    q = int(order)
    if not 1 <= q < n:
        raise OrderError(f"need 1 <= order < series length, got order={q}, n={n}")
    z = np.zeros((n, q))
    for j in range(1, q + 1):
        z[j:, j - 1] = s[: n - j]
    return z


def ar_objective(r, data: ARData, measure: IntegratingMeasure) -> float:
    """Distance M(r) for the series, reusing the regression objective with
    response X, design Z, and weights Z / sqrt(n)."""
    z = lag_matrix(data.series, data.order)
    d = z / np.sqrt(data.n)
    reg = RegressionData(data.series, z)
    if measure.is_continuous:
        return objective_continuous(r, reg, d, measure)
    return objective_degenerate(r, reg, d)


def _cls_start(z: np.ndarray, series: np.ndarray) -> np.ndarray:
    try:
        return solve_ls(z, series)
    except RankDeficiencyError as exc:
        raise DegenerateSeriesError(
            "lag cross-product is singular; the series carries no usable lag information"
        ) from exc


def koul_ar_mde(
    data: ARData,
    measure: IntegratingMeasure | None = None,
    options: OptimizerOptions | None = None,
) -> ArEstimate:
    """Minimum distance fit of the autoregression coefficients.

    Starts from the conditional least squares solution
    (sum Z_i Z_i')^{-1} (sum Z_i X_i) and minimizes ``ar_objective`` by the
    simplex search.  Raises DegenerateSeriesError when the lag cross-product
    is singular (e.g. an all-zero series).
    """
    m = measure if measure is not None else IntegratingMeasure.lebesgue()
    violations = validate_measure(m)
    if violations:
        raise InvalidMeasureError("; ".join(violations))
    series = data.series
    z = lag_matrix(series, data.order)
    d = z / np.sqrt(data.n)
    rho0 = _cls_start(z, series)

    if m.is_continuous:
        gram = d @ d.T

        def fn(r: np.ndarray) -> float:
            e = series - z @ r
            h_res = np.asarray(eval_h(m, e), dtype=float)
            h_neg = np.asarray(eval_h(m, -e), dtype=float)
            return _dual_value(h_res, h_neg, gram)

    else:

        def fn(r: np.ndarray) -> float:
            return _sign_value(series - z @ r, d)

    rhohat, fmin, diag = minimize_simplex(fn, rho0, options)
    residuals = series - z @ rhohat
    return ArEstimate(rhohat, residuals, fmin, diag)
