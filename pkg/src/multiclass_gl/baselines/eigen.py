"""
Smallest eigenpairs of symmetric matrices.
"""

import logging
from typing import Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..exceptions import ContractError, NumericalError

logger = logging.getLogger(__name__)

DENSE_CAP = 5000
RESIDUAL_TOL = 1e-8


def smallest_eigenpairs(
    matrix, k: int, dense_cap: int = DENSE_CAP, max_iter: int = 10_000
) -> Tuple[np.ndarray, np.ndarray]:
    """Return the k smallest eigenvalues (ascending) and their eigenvectors.

    Matrices up to dense_cap rows use a dense symmetric decomposition; larger
    ones use ARPACK Lanczos in shift-invert mode around a point just below
    zero. Each pair must satisfy ‖Av − λv‖ ≤ 1e−8‖v‖.
    """
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ContractError(f"Expected a square matrix, got {matrix.shape}")
    if not 1 <= k <= n:
        raise ContractError(f"Requested {k} eigenpairs of a {n}×{n} matrix")
    asym = abs(matrix - matrix.T)
    asym_max = asym.max() if sparse.issparse(asym) else np.max(asym)
    if asym_max > 1e-10:
        raise ContractError(f"Matrix is not symmetric (max |A − Aᵀ| = {asym_max:.3g})")

    if n <= dense_cap:
        dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)
        values, vectors = np.linalg.eigh(dense)
        values, vectors = values[:k], vectors[:, :k]
    else:
        values, vectors = _lanczos_smallest(sparse.csr_matrix(matrix), k, max_iter)

    _check_residuals(matrix, values, vectors)
    return values, vectors


def _lanczos_smallest(matrix: sparse.csr_matrix, k: int, max_iter: int):
    n = matrix.shape[0]
    v0 = np.random.default_rng(0).standard_normal(n)
    try:
        values, vectors = eigsh(
            matrix, k=k, sigma=-1e-3, which="LM", v0=v0, tol=0.0, maxiter=max_iter
        )
    except ArpackNoConvergence as e:
        raise NumericalError(f"Lanczos did not converge for {k} eigenpairs: {e}")
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def _check_residuals(matrix, values: np.ndarray, vectors: np.ndarray) -> None:
    product = matrix @ vectors
    residual = np.linalg.norm(product - vectors * values, axis=0)
    scale = np.linalg.norm(vectors, axis=0)
    worst = float(np.max(residual / scale))
    if worst > RESIDUAL_TOL:
        raise NumericalError(f"Eigenpair residual {worst:.3g} exceeds {RESIDUAL_TOL:g}")
    logger.debug("Eigenpair residual max %.3g", worst)
