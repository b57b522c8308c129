"""
Graph data types: construction parameters, kNN results and the similarity graph.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from ..exceptions import ContractError

DEFAULT_DENSE_CAP = 5000


class GraphConfig(BaseModel):
    """Parameters of the local-scaling kNN graph."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    n_neighbors: int = Field(10, alias="N", ge=1)
    scale_neighbor: int = Field(10, alias="M", ge=1)
    tau_floor: float = Field(1e-8, gt=0)
    degree_floor: float = Field(1e-12, gt=0)
    dense_cap: int = Field(DEFAULT_DENSE_CAP, ge=1)

    @model_validator(mode="after")
    def _check_scale_neighbor(self) -> "GraphConfig":
        if self.scale_neighbor > self.n_neighbors:
            raise ValueError(
                f"M ({self.scale_neighbor}) must not exceed N ({self.n_neighbors})"
            )
        return self


@dataclass(frozen=True)
class KnnResult:
    """Per-vertex neighbor lists, ascending by (squared distance, index)."""

    indices: np.ndarray
    sq_distances: np.ndarray

    @property
    def n(self) -> int:
        return int(self.indices.shape[0])

    @property
    def n_neighbors(self) -> int:
        return int(self.indices.shape[1])


@dataclass(frozen=True)
class SimilarityGraph:
    """Sparse symmetric weighted graph with degrees and normalized coefficients.

    ``weights`` holds W and ``norm_weights`` holds ŵᵢⱼ = wᵢⱼ/√(dᵢdⱼ) on the
    same sparsity pattern; both are CSR with sorted column indices.
    """

    weights: sparse.csr_matrix
    degrees: np.ndarray
    norm_weights: sparse.csr_matrix

    def __post_init__(self):
        n = self.weights.shape[0]
        if self.weights.shape != (n, n) or self.norm_weights.shape != (n, n):
            raise ContractError("Graph matrices must be square and share a shape")
        if self.degrees.shape != (n,):
            raise ContractError(
                f"Degree vector has shape {self.degrees.shape}, expected ({n},)"
            )

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])

    @property
    def nnz(self) -> int:
        return int(self.weights.nnz)

    @property
    def indptr(self) -> np.ndarray:
        return self.weights.indptr

    @property
    def indices(self) -> np.ndarray:
        return self.weights.indices

    @property
    def norm_coeffs(self) -> np.ndarray:
        return self.norm_weights.data

    def neighbors(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        """Neighbor indices of vertex i and the matching ŵ coefficients."""
        start, stop = self.indptr[i], self.indptr[i + 1]
        return self.indices[start:stop], self.norm_weights.data[start:stop]

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return (rows, cols, w, ŵ) for every stored (ordered) edge in CSR order."""
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return rows, self.indices, self.weights.data, self.norm_weights.data

    def n_components(self) -> int:
        count, _ = connected_components(self.weights, directed=False)
        return int(count)

    def is_connected(self) -> bool:
        return self.n_components() == 1

    def normalized_laplacian(self) -> sparse.csr_matrix:
        """Sparse L_s = I − D^(−1/2) W D^(−1/2)."""
        identity = sparse.identity(self.n, format="csr", dtype=np.float64)
        return (identity - self.norm_weights).tocsr()

    def laplacian(self) -> sparse.csr_matrix:
        """Sparse L = D − W."""
        return (sparse.diags(self.degrees, format="csr") - self.weights).tocsr()

    def dense_laplacians(self, cap: int = DEFAULT_DENSE_CAP) -> Tuple[np.ndarray, np.ndarray]:
        """Dense (L, L_s); only materialized for n ≤ cap."""
        if self.n > cap:
            raise ContractError(
                f"Refusing to materialize dense Laplacians for n={self.n} > cap={cap}"
            )
        return self.laplacian().toarray(), self.normalized_laplacian().toarray()
