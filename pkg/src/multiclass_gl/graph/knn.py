"""
Exact brute-force k-nearest-neighbor search and local scales.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.spatial.distance import cdist

from ..exceptions import ConfigError, DataFormatError
from ..utils.parallel import resolve_n_jobs
from .base import KnnResult

logger = logging.getLogger(__name__)

# Upper bound on the float64 entries of one distance block.
_BLOCK_BUDGET = 8_000_000


def knn_search(
    points: np.ndarray, n_neighbors: int, n_jobs: Optional[int] = None
) -> KnnResult:
    """Find the n_neighbors closest points of every point, self excluded.

    Distances are squared Euclidean, evaluated pairwise (no dot-product
    expansion) so coincident points have distance exactly 0. Ties are broken
    by ascending index, which keeps the result independent of how rows are
    split across workers.
    """
    points = _as_feature_matrix(points)
    n = points.shape[0]
    if n_neighbors < 1 or n_neighbors >= n:
        raise ConfigError(f"Neighbor count N={n_neighbors} must satisfy 1 <= N < n={n}")

    block = max(1, _BLOCK_BUDGET // n)
    bounds = [(start, min(start + block, n)) for start in range(0, n, block)]
    workers = min(resolve_n_jobs(n_jobs), len(bounds))

    if workers == 1:
        parts = [_knn_block(points, start, stop, n_neighbors) for start, stop in bounds]
    else:
        parts = Parallel(n_jobs=workers, prefer="threads")(
            delayed(_knn_block)(points, start, stop, n_neighbors)
            for start, stop in bounds
        )

    indices = np.vstack([p[0] for p in parts])
    sq_distances = np.vstack([p[1] for p in parts])
    logger.debug("kNN search: n=%d N=%d blocks=%d workers=%d", n, n_neighbors, len(bounds), workers)
    return KnnResult(indices=indices, sq_distances=sq_distances)


def _knn_block(
    points: np.ndarray, start: int, stop: int, n_neighbors: int
) -> Tuple[np.ndarray, np.ndarray]:
    dist = cdist(points[start:stop], points, metric="sqeuclidean")
    local = np.arange(stop - start)
    dist[local, start + local] = np.inf

    thresholds = np.partition(dist, n_neighbors - 1, axis=1)[:, n_neighbors - 1]
    out_idx = np.empty((stop - start, n_neighbors), dtype=np.int64)
    out_dist = np.empty((stop - start, n_neighbors), dtype=np.float64)
    for r in range(stop - start):
        # Candidates come back in ascending index order; a stable sort on
        # distance then resolves ties by index.
        candidates = np.flatnonzero(dist[r] <= thresholds[r])
        order = np.argsort(dist[r, candidates], kind="stable")[:n_neighbors]
        out_idx[r] = candidates[order]
        out_dist[r] = dist[r, candidates[order]]
    return out_idx, out_dist


def local_scales(knn: KnnResult, scale_neighbor: int, tau_floor: float) -> np.ndarray:
    """τᵢ = distance to the M-th closest point (self excluded), floored."""
    if scale_neighbor < 1 or scale_neighbor > knn.n_neighbors:
        raise ConfigError(
            f"Scale neighbor M={scale_neighbor} must satisfy 1 <= M <= N={knn.n_neighbors}"
        )
    if tau_floor <= 0:
        raise ConfigError(f"tau_floor must be positive, got {tau_floor}")
    tau = np.sqrt(knn.sq_distances[:, scale_neighbor - 1])
    floored = int(np.count_nonzero(tau < tau_floor))
    if floored:
        logger.debug("Local scale floor engaged for %d vertices", floored)
    return np.maximum(tau, tau_floor)


def _as_feature_matrix(points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2 or points.shape[0] < 2 or points.shape[1] < 1:
        raise DataFormatError(f"Expected an n×d feature matrix with n >= 2, got {points.shape}")
    if not np.all(np.isfinite(points)):
        raise DataFormatError("Feature matrix contains non-finite values")
    return np.ascontiguousarray(points)
