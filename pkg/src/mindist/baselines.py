"""Classical estimators used as benchmark competitors: ordinary least
squares, conditional least squares for autoregression, and the
Cochrane-Orcutt iterative procedure for regression with AR errors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ar_mde import ARData, lag_matrix
from .errors import DegenerateSeriesError, OrderError, RankDeficiencyError
from .linalg import solve_ls
from .lr_mde import RegressionData
from .two_stage import _ZERO_SERIES_RTOL, transform_data


@dataclass(frozen=True)
class OlsFit:
    betahat: np.ndarray
    residuals: np.ndarray


@dataclass(frozen=True)
class CoResult:
    """Cochrane-Orcutt output; ``rho_degenerate`` marks an all-zero residual
    series that forced rho to zero."""

    betahat: np.ndarray
    rhohat: np.ndarray
    iterations: int
    converged: bool
    rho_degenerate: bool = False


def ols(data: RegressionData) -> OlsFit:
    """Ordinary least squares fit."""
    betahat = solve_ls(data.x, data.y)
    return OlsFit(betahat, data.y - data.x @ betahat)


def ar_cls(data: ARData) -> np.ndarray:
    """Conditional least squares (sum Z Z')^{-1} (sum Z X) with the
    zero-padded lag matrix."""
    z = lag_matrix(data.series, data.order)
    try:
        return solve_ls(z, data.series)
    except RankDeficiencyError as exc:
        raise DegenerateSeriesError("singular lag cross-product") from exc


def cochrane_orcutt(
    y,
    x,
    order: int = 1,
    tol: float = 1e-6,
    max_iter: int = 50,
) -> CoResult:
    """Cochrane-Orcutt iteration for regression with AR(q) errors.

    Alternates OLS on the quasi-differenced data (rho initialized at zero,
    so the first pass is OLS on rows q+1..n) with conditional least squares
    on the residuals, until the largest change across both parameter blocks
    drops below ``tol`` or ``max_iter`` is reached.
    """
    data = RegressionData(y, x)
    q = int(order)
    if not 1 <= q < data.n:
        raise OrderError(f"need 1 <= order < n, got order={q}, n={data.n}")
    scale = max(1.0, float(np.max(np.abs(data.y))))

    rho = np.zeros(q)
    beta: np.ndarray | None = None
    converged = False
    degenerate = False
    iterations = 0
    for iteration in range(1, max_iter + 1):
        iterations = iteration
        y_t, x_t = transform_data(data.y, data.x, rho)
        try:
            beta_new = ols(RegressionData(y_t, x_t)).betahat
        except RankDeficiencyError as exc:
            raise RankDeficiencyError(
                f"singular transformed design at iteration {iteration}"
            ) from exc
        residuals = data.y - data.x @ beta_new
        if np.max(np.abs(residuals)) <= _ZERO_SERIES_RTOL * scale:
            rho_new = np.zeros(q)
            degenerate = True
        else:
            try:
                rho_new = ar_cls(ARData(residuals, q))
            except DegenerateSeriesError as exc:
                raise DegenerateSeriesError(
                    f"singular residual lag cross-product at iteration {iteration}"
                ) from exc
            degenerate = False
        if beta is not None:
            change = max(
                float(np.max(np.abs(beta_new - beta))),
                float(np.max(np.abs(rho_new - rho))),
            )
            if change < tol:
                beta, rho = beta_new, rho_new
                converged = True
                break
        beta, rho = beta_new, rho_new
    assert beta is not None
    return CoResult(beta, rho, iterations, converged, degenerate)
