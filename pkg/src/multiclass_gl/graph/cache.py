"""
Binary graph cache.

Layout (little-endian): magic b"GLGR", version u32, n u64, then the CSR row
offsets (n+1 × u64), column indices (nnz × u64), weights (nnz × f64) and
degrees (n × f64). The normalized coefficients are recomputed on load.
"""

import logging
import struct
from pathlib import Path

import numpy as np
from scipy import sparse

from ..exceptions import DataFormatError
from .base import SimilarityGraph

logger = logging.getLogger(__name__)

MAGIC = b"GLGR"
VERSION = 1
_HEADER = struct.Struct("<4sIQ")


def save_graph(graph: SimilarityGraph, path: Path) -> None:
    """Write the graph to a binary cache file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MAGIC, VERSION, graph.n))
        f.write(graph.indptr.astype("<u8").tobytes())
        f.write(graph.indices.astype("<u8").tobytes())
        f.write(graph.weights.data.astype("<f8").tobytes())
        f.write(graph.degrees.astype("<f8").tobytes())
    logger.info("Saved graph cache %s (n=%d, nnz=%d)", path, graph.n, graph.nnz)


def load_graph(path: Path) -> SimilarityGraph:
    """Read a graph written by save_graph."""
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size:
        raise DataFormatError("Truncated graph header", offset=len(blob))
    magic, version, n = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise DataFormatError(f"Bad graph cache magic {magic!r}", offset=0)
    if version != VERSION:
        raise DataFormatError(f"Unsupported graph cache version {version}", offset=4)

    offset = _HEADER.size
    indptr, offset = _read_array(blob, offset, "<u8", n + 1)
    nnz = int(indptr[-1])
    indices, offset = _read_array(blob, offset, "<u8", nnz)
    data, offset = _read_array(blob, offset, "<f8", nnz)
    degrees, offset = _read_array(blob, offset, "<f8", n)
    if offset != len(blob):
        raise DataFormatError("Trailing bytes after graph cache payload", offset=offset)

    weights = sparse.csr_matrix(
        (data.astype(np.float64), indices.astype(np.int64), indptr.astype(np.int64)),
        shape=(n, n),
    )
    rows = np.repeat(np.arange(n), np.diff(weights.indptr))
    degrees = degrees.astype(np.float64)
    norm_data = weights.data / np.sqrt(degrees[rows] * degrees[weights.indices])
    norm = sparse.csr_matrix(
        (norm_data, weights.indices.copy(), weights.indptr.copy()), shape=(n, n)
    )
    return SimilarityGraph(weights=weights, degrees=degrees, norm_weights=norm)


def _read_array(blob: bytes, offset: int, dtype: str, count: int):
    size = np.dtype(dtype).itemsize * count
    if offset + size > len(blob):
        raise DataFormatError(
            f"Truncated graph cache: need {size} bytes for {count} × {dtype}",
            offset=offset,
        )
    array = np.frombuffer(blob, dtype=dtype, count=count, offset=offset)
    return array, offset + size
