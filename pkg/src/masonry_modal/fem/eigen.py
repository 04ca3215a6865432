"""Generalized symmetric eigenproblem ``K x = lambda M x``."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..errors import EigenError


@dataclass(frozen=True)
class EigenPair:
    omega2: float
    shape: np.ndarray  # mass-normalized, reduced dofs

    @property
    def omega(self) -> float:
        return float(np.sqrt(max(self.omega2, 0.0)))


def solve_generalized_symmetric_eig(K, M, n: int) -> list[EigenPair]:
    """Lowest ``n`` eigenpairs, ascending.

    ``M`` is Cholesky-factored as ``L L^T`` and the pencil is reduced to the
    standard symmetric matrix ``L^-1 K L^-T``.  Shapes come back
    mass-normalized.
    """
    K = np.asarray(K, dtype=float)
    M = np.asarray(M, dtype=float)
    if K.shape != M.shape or K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise EigenError(f"incompatible pencil shapes {K.shape} and {M.shape}")
    size = K.shape[0]
    if not 1 <= n <= size:
        raise EigenError(f"requested {n} modes from a system of size {size}")
    try:
        Lc = linalg.cholesky(M, lower=True)
    except linalg.LinAlgError as exc:
        raise EigenError("mass matrix is not positive definite") from exc

    Y = linalg.solve_triangular(Lc, K, lower=True)
    A = linalg.solve_triangular(Lc, Y.T, lower=True)
    A = 0.5 * (A + A.T)
    w, V = linalg.eigh(A, subset_by_index=[0, n - 1])
    X = linalg.solve_triangular(Lc.T, V, lower=False)
    pairs = []
    for i in range(n):
        lam, x = _refine(K, M, float(w[i]), X[:, i])
        pairs.append(EigenPair(omega2=lam, shape=x))
    return pairs


def _refine(K, M, lam, x, steps=2):
    """Shifted inverse iteration on the original pencil.

    The Cholesky reduction loses accuracy on stiff pencils; a couple of
    steps restore a small residual for the low modes.
    """
    for _ in range(steps):
        with warnings.catch_warnings():
            # an exactly singular shift means the pair is already exact
            warnings.simplefilter("ignore", linalg.LinAlgWarning)
            lu = linalg.lu_factor(K - lam * M, check_finite=False)
        if np.any(np.diag(lu[0]) == 0.0):
            break
        y = linalg.lu_solve(lu, M @ x)
        if not np.all(np.isfinite(y)):
            break
        y /= np.sqrt(y @ M @ y)
        if y @ M @ x < 0:
            y = -y
        new_lam = float(y @ K @ y)
        if abs(new_lam - lam) > 1e-6 * max(abs(lam), 1e-300) + 1e-12 * np.max(np.abs(np.diag(K)) / np.abs(np.diag(M))):
            # drifted to a neighbouring mode; keep the unrefined pair
            break
        x, lam = y, new_lam
    return lam, x.copy()
