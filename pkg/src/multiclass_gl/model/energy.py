"""
Energy breakdown and smoothing gradient on a similarity graph.
"""

from dataclasses import dataclass

import numpy as np

from ..datasets.base import FidelitySet
from ..exceptions import ContractError
from ..graph.base import SimilarityGraph
from .potential import label_of, periodic_well, r_hat, r_hat_deriv, rho
from .state import StateVector


@dataclass(frozen=True)
class EnergyBreakdown:
    smoothing: float
    potential: float
    fidelity: float

    @property
    def total(self) -> float:
        return self.smoothing + self.potential + self.fidelity


def energy(
    state: StateVector, graph: SimilarityGraph, fidelity: FidelitySet, eps: float
) -> EnergyBreakdown:
    """Evaluate the three terms of the multiclass GL energy.

    The double sum over vertex pairs runs over stored edges only; ŵᵢⱼ is zero
    for every other pair. Each unordered edge is visited in both directions.
    """
    _check_sizes(state, graph)
    u = state.u
    rows, cols, _, w_hat = graph.edge_arrays()
    diff = rho(u[rows], u[cols], state.n_classes)
    smoothing = 0.5 * eps * float(np.sum(w_hat * diff**2))
    potential = float(np.sum(periodic_well(u))) / eps

    mu, target = fidelity.dense(state.n)
    fid = float(np.sum(0.5 * mu * (u - target) ** 2))
    return EnergyBreakdown(smoothing=smoothing, potential=potential, fidelity=fid)


def smoothing_gradient(state: StateVector, graph: SimilarityGraph) -> np.ndarray:
    """R̂ for every vertex: Σⱼ ŵᵢⱼ [r̂(uᵢ) ± r̂(uⱼ)] r̂′(uᵢ).

    "+" applies across classes and the signed difference within a class, so
    2·ε·R̂ is the exact derivative of the smoothing term away from the
    nonsmooth points.
    """
    _check_sizes(state, graph)
    u = state.u
    rows, cols, _, w_hat = graph.edge_arrays()
    r = r_hat(u)
    labels = label_of(u, state.n_classes)
    same = labels[rows] == labels[cols]
    paired = np.where(same, r[rows] - r[cols], r[rows] + r[cols])
    per_vertex = np.bincount(rows, weights=w_hat * paired, minlength=state.n)
    return per_vertex * r_hat_deriv(u)


def smoothing_gradient_term(state: StateVector, graph: SimilarityGraph, i: int) -> float:
    """R̂(uᵢ) for a single vertex."""
    _check_sizes(state, graph)
    if not 0 <= i < state.n:
        raise ContractError(f"Vertex {i} out of range for n={state.n}")
    u = state.u
    nbrs, w_hat = graph.neighbors(i)
    ri = r_hat(u[i])
    rj = r_hat(u[nbrs])
    same = label_of(u[nbrs], state.n_classes) == label_of(u[i], state.n_classes)
    paired = np.where(same, ri - rj, ri + rj)
    return float(np.sum(w_hat * paired) * r_hat_deriv(u[i]))


def _check_sizes(state: StateVector, graph: SimilarityGraph) -> None:
    if state.n != graph.n:
        raise ContractError(f"State has {state.n} vertices, graph has {graph.n}")
