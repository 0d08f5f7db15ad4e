"""Dense linear algebra helpers for the estimators.

Matrices are plain float64 numpy arrays.  Problem sizes are small (n in the
hundreds to low thousands, p in the tens), so everything is dense and
eigendecomposition-based.
"""

from __future__ import annotations

import numpy as np

from .errors import RankDeficiencyError, ShapeError


def _as_matrix(m, name: str) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ShapeError(f"{name} must be a 2-d matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ShapeError(f"{name} contains non-finite entries")
    return a


def inv_sqrt_sym(m, tol: float = 1e-12) -> np.ndarray:
    """Inverse square root of a symmetric positive definite matrix.

    Computed from the spectral decomposition M = V diag(w) V', giving the
    unique symmetric positive definite A = V diag(1/sqrt(w)) V' with
    A @ A @ M = I.

    Parameters
    ----------
    m : array_like, square and symmetric within ``tol`` (relative).
    tol : relative eigenvalue cutoff; the smallest eigenvalue must exceed
        ``tol`` times the largest.

    Raises
    ------
    ShapeError : non-square or asymmetric input.
    RankDeficiencyError : eigenvalue below the cutoff, named in the message.
    """
    a = _as_matrix(m, "matrix")
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"matrix must be square, got {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.T))) > tol * scale:
        raise ShapeError("matrix is not symmetric within tolerance")
    w, v = np.linalg.eigh(a)
    if w[0] <= tol * w[-1]:
        raise RankDeficiencyError(
            f"matrix is rank deficient: eigenvalue {w[0]:.6e} "
            f"<= {tol:g} * largest eigenvalue {w[-1]:.6e}"
        )
    return (v / np.sqrt(w)) @ v.T


def solve_ls(x, y) -> np.ndarray:
    """Least-squares solution of ``y ~ x @ b`` via a stable factorization.

    Requires n >= p and full column rank; raises RankDeficiencyError
    otherwise.
    """
    a = _as_matrix(x, "design matrix")
    b = np.asarray(y, dtype=float)
    if b.ndim != 1:
        raise ShapeError(f"response must be 1-d, got ndim={b.ndim}")
    if not np.all(np.isfinite(b)):
        raise ShapeError("response contains non-finite entries")
    n, p = a.shape
    if b.shape[0] != n:
        raise ShapeError(f"response length {b.shape[0]} != row count {n}")
    if n < p or p < 1:
        raise ShapeError(f"need n >= p >= 1, got n={n}, p={p}")
    coef, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    if rank < p:
        raise RankDeficiencyError(f"design matrix has rank {rank} < {p} columns")
    return coef
