"""
Similarity weights, symmetrization and Laplacian coefficients.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from ..exceptions import ContractError, DataFormatError
from .base import DEFAULT_DENSE_CAP, GraphConfig, KnnResult, SimilarityGraph
from .knn import knn_search, local_scales

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirectedWeights:
    """Weight entries for each directed kNN pair (i → j)."""

    n: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray


def similarity_weights(
    points: np.ndarray, knn: KnnResult, tau: np.ndarray
) -> DirectedWeights:
    """wᵢⱼ = exp(−‖xᵢ−xⱼ‖² / (τᵢ τⱼ)) for every directed kNN pair."""
    n = knn.n
    if np.asarray(points).shape[0] != n or tau.shape != (n,):
        raise ContractError("points, kNN result and scales must describe the same n")
    if np.any(tau <= 0):
        raise ContractError("Local scales must be strictly positive")

    rows = np.repeat(np.arange(n, dtype=np.int64), knn.n_neighbors)
    cols = knn.indices.reshape(-1)
    sq = knn.sq_distances.reshape(-1)
    if not np.all(np.isfinite(sq)):
        bad = int(rows[np.flatnonzero(~np.isfinite(sq))[0]])
        raise DataFormatError(f"Non-finite neighbor distance for vertex {bad}")

    values = np.exp(-sq / (tau[rows] * tau[cols]))
    return DirectedWeights(n=n, rows=rows, cols=cols, values=values)


def symmetrize(entries: DirectedWeights) -> sparse.csr_matrix:
    """Union symmetrization: {i, j} is an edge if either is a kNN of the other.

    Each unordered pair keeps a single weight which is then mirrored, so
    W equals Wᵀ bit for bit. Self pairs and underflowed weights are dropped.
    """
    n = entries.n
    lo = np.minimum(entries.rows, entries.cols)
    hi = np.maximum(entries.rows, entries.cols)
    keep = (lo != hi) & (entries.values > 0)
    dropped = int(np.count_nonzero((entries.values <= 0) & (lo != hi)))
    if dropped:
        logger.warning("Dropped %d edges whose weight underflowed to 0", dropped)

    keys = lo[keep] * n + hi[keep]
    unique_keys, first = np.unique(keys, return_index=True)
    values = entries.values[keep][first]
    lo_u = unique_keys // n
    hi_u = unique_keys % n

    rows = np.concatenate([lo_u, hi_u])
    cols = np.concatenate([hi_u, lo_u])
    data = np.concatenate([values, values])
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    matrix.sort_indices()
    return matrix


def degrees_and_laplacians(
    adjacency: sparse.csr_matrix,
    degree_floor: float,
    dense: bool = False,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> Tuple[np.ndarray, sparse.csr_matrix, Optional[np.ndarray], Optional[np.ndarray]]:
    """Return (d, Ŵ, L, L_s); L and L_s are None unless dense is requested.

    dᵢ = max(Σⱼ wᵢⱼ, degree_floor) and Ŵ carries ŵᵢⱼ = wᵢⱼ/√(dᵢdⱼ) on the
    adjacency's sparsity pattern.
    """
    adjacency = sparse.csr_matrix(adjacency)
    n = adjacency.shape[0]
    raw = np.asarray(adjacency.sum(axis=1)).ravel()
    isolated = np.flatnonzero(raw == 0)
    if isolated.size:
        logger.warning(
            "%d isolated vertices (raw degree 0), degree floor %g applied; first: %d",
            isolated.size,
            degree_floor,
            int(isolated[0]),
        )
    degrees = np.maximum(raw, degree_floor)

    rows = np.repeat(np.arange(n), np.diff(adjacency.indptr))
    cols = adjacency.indices
    norm_data = adjacency.data / np.sqrt(degrees[rows] * degrees[cols])
    norm = sparse.csr_matrix(
        (norm_data, adjacency.indices.copy(), adjacency.indptr.copy()), shape=(n, n)
    )

    if not dense:
        return degrees, norm, None, None
    if n > dense_cap:
        raise ContractError(
            f"Refusing to materialize dense Laplacians for n={n} > cap={dense_cap}"
        )
    w_dense = adjacency.toarray()
    laplacian = np.diag(degrees) - w_dense
    normalized = np.eye(n) - norm.toarray()
    return degrees, norm, laplacian, normalized


def build_graph(
    points: np.ndarray, config: GraphConfig, n_jobs: Optional[int] = None
) -> SimilarityGraph:
    """Build the local-scaling kNN similarity graph for a feature matrix."""
    knn = knn_search(points, config.n_neighbors, n_jobs=n_jobs)
    tau = local_scales(knn, config.scale_neighbor, config.tau_floor)
    entries = similarity_weights(points, knn, tau)
    adjacency = symmetrize(entries)
    degrees, norm, _, _ = degrees_and_laplacians(adjacency, config.degree_floor)
    graph = SimilarityGraph(weights=adjacency, degrees=degrees, norm_weights=norm)
    logger.info(
        "Built graph: n=%d, edges=%d, N=%d, M=%d",
        graph.n,
        graph.nnz // 2,
        config.n_neighbors,
        config.scale_neighbor,
    )
    return graph
