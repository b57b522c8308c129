"""
Global test fixtures for multiclass GL.
Provides layered, session-scoped fixtures: datasets first, graphs on top.
"""

import numpy as np
import pytest
from scipy import sparse

from src.multiclass_gl.datasets.generators import gen_swiss_roll, gen_three_moons
from src.multiclass_gl.graph.base import GraphConfig, SimilarityGraph
from src.multiclass_gl.graph.builder import build_graph, degrees_and_laplacians


# ── Phase 1: Datasets ───────────────────────────────────────────────
@pytest.fixture(scope="session")
def three_moons():
    """The seeded three-moons benchmark (n=1500, d=100, K=3)."""
    return gen_three_moons(seed=1)


@pytest.fixture(scope="session")
def swiss_roll():
    """The seeded swiss-roll benchmark (n=1600, d=3, K=4)."""
    return gen_swiss_roll(seed=1)


@pytest.fixture(scope="session")
def small_moons():
    """A reduced three-moons sample for quick solver tests (n=150)."""
    return gen_three_moons(seed=3, per_class=50)


# ── Phase 2: Graphs ─────────────────────────────────────────────────
@pytest.fixture(scope="session")
def three_moons_graph(three_moons):
    return build_graph(three_moons.points, GraphConfig(N=10, M=10), n_jobs=1)


@pytest.fixture(scope="session")
def small_moons_graph(small_moons):
    return build_graph(small_moons.points, GraphConfig(N=10, M=10), n_jobs=1)


# ── Generic helpers ─────────────────────────────────────────────────
def graph_from_dense(weights: np.ndarray, degree_floor: float = 1e-12) -> SimilarityGraph:
    """Wrap a symmetric dense weight matrix as a SimilarityGraph."""
    adjacency = sparse.csr_matrix(np.asarray(weights, dtype=np.float64))
    adjacency.eliminate_zeros()
    adjacency.sort_indices()
    degrees, norm, _, _ = degrees_and_laplacians(adjacency, degree_floor)
    return SimilarityGraph(weights=adjacency, degrees=degrees, norm_weights=norm)


def random_graph(n: int, seed: int, density: float = 0.4) -> SimilarityGraph:
    """Symmetric random graph with weights in (0, 1] and a spanning path."""
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.uniform(0.05, 1.0, size=(n, n)) * (rng.random((n, n)) < density), 1)
    path = np.arange(n - 1)
    upper[path, path + 1] = rng.uniform(0.05, 1.0, size=n - 1)
    return graph_from_dense(upper + upper.T)


@pytest.fixture
def make_graph():
    return graph_from_dense


@pytest.fixture
def make_random_graph():
    return random_graph
