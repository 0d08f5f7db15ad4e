"""Derivative-free minimization shared by the distance estimators.

The distance objectives are non-smooth (piecewise constant under the point
mass measure, kinked at residual ties otherwise), so minimization uses a
Nelder-Mead simplex: start from a consistent initial estimate, converge on
the function-value spread of the simplex, and restart once from the incumbent
with a rebuilt simplex to escape premature contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize

_ITER_CAP_PER_DIM = 1000


@dataclass(frozen=True)
class OptimizerOptions:
    """Simplex search settings.

    max_iters : iteration cap per run; ``None`` means 1000 per dimension.
    f_tol : convergence threshold on the simplex function-value spread.
    simplex_scale : per-coordinate initial step, max(s, s * |x0_i|).
    restarts : additional runs from the incumbent with a fresh simplex.
    """

    max_iters: int | None = None
    f_tol: float = 1e-8
    simplex_scale: float = 0.1
    restarts: int = 1


@dataclass(frozen=True)
class OptimizerDiagnostics:
    """Outcome of a simplex search: total iterations across runs, whether
    the final run hit the spread tolerance, and the final spread."""

    iterations: int
    converged: bool
    simplex_spread: float


def _initial_simplex(x0: np.ndarray, scale: float) -> np.ndarray:
    dim = x0.size
    sim = np.tile(x0, (dim + 1, 1))
    for i in range(dim):
        sim[i + 1, i] += max(scale, scale * abs(x0[i]))
    return sim


def minimize_simplex(
    fn: Callable[[np.ndarray], float],
    x0,
    options: OptimizerOptions | None = None,
) -> tuple[np.ndarray, float, OptimizerDiagnostics]:
    """Minimize ``fn`` from ``x0``, returning (argmin, value, diagnostics)."""
    opts = options if options is not None else OptimizerOptions()
    start = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    dim = start.size
    max_iters = opts.max_iters if opts.max_iters is not None else _ITER_CAP_PER_DIM * dim

    best_x = start
    best_f = np.inf
    iterations = 0
    converged = False
    spread = np.inf
    for _ in range(opts.restarts + 1):
        res = minimize(
            fn,
            start,
            method="Nelder-Mead",
            options={
                "initial_simplex": _initial_simplex(start, opts.simplex_scale),
                "maxiter": max_iters,
                "fatol": opts.f_tol,
                # Convergence is on the function-value spread alone.
                "xatol": np.inf,
            },
        )
        iterations += int(res.nit)
        fsim = np.asarray(res.final_simplex[1], dtype=float)
        spread = float(np.max(fsim) - np.min(fsim))
        converged = bool(res.success)
        if float(res.fun) <= best_f:
            best_x = np.asarray(res.x, dtype=float)
            best_f = float(res.fun)
        start = best_x
    return best_x, best_f, OptimizerDiagnostics(iterations, converged, spread)
