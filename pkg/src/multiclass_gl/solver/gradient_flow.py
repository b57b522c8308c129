"""
Gradient-descent minimization of the multiclass GL energy with greedy
class reassignment.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..datasets.base import FidelitySet
from ..exceptions import ContractError, NumericalDivergenceError
from ..graph.base import SimilarityGraph
from ..model.energy import energy, smoothing_gradient
from ..model.potential import frac, periodic_well_deriv, rho
from ..model.state import StateVector
from .base import RunTrace, SolverConfig

logger = logging.getLogger(__name__)


@dataclass
class SolverResult:
    state: StateVector
    labels: np.ndarray
    trace: RunTrace


def init_state(n: int, config: SolverConfig, fidelity: FidelitySet) -> StateVector:
    """Uniform random state on (−½, K−½) with fidelity vertices set to their class."""
    fidelity.check_bounds(n)
    rng = np.random.default_rng(config.seed)
    u = rng.uniform(0.0, config.n_classes, size=n) - 0.5
    u[fidelity.vertices] = fidelity.classes.astype(np.float64)
    return StateVector(u, config.n_classes).clamped()


def gradient_step(
    state: StateVector,
    graph: SimilarityGraph,
    fidelity: FidelitySet,
    eps: float,
    dt: float,
    iteration: Optional[int] = None,
) -> StateVector:
    """One simultaneous (Jacobi) explicit step, left unclamped.

    Every read uses the old state. The relabel guard reads these raw values,
    so a vertex pushed past −½ or K−½ counts as a label change.
    """
    u = state.u
    mu, target = fidelity.dense(state.n)
    grad = (
        eps * smoothing_gradient(state, graph)
        + periodic_well_deriv(u) / eps
        + mu * (u - target)
    )
    updated = u - dt * grad
    bad = np.flatnonzero(~np.isfinite(updated))
    if bad.size:
        vertex = int(bad[0])
        raise NumericalDivergenceError(vertex, float(updated[vertex]), iteration)
    return StateVector(updated, state.n_classes)


def gradient_sweep(
    state: StateVector,
    graph: SimilarityGraph,
    fidelity: FidelitySet,
    eps: float,
    dt: float,
    iteration: Optional[int] = None,
) -> StateVector:
    """gradient_step clamped to the admissible range."""
    return gradient_step(state, graph, fidelity, eps, dt, iteration).clamped()


def greedy_relabel_pass(
    swept: StateVector,
    labels_before: np.ndarray,
    graph: SimilarityGraph,
    n_classes: int,
) -> StateVector:
    """Reassign every vertex whose label changed during the sweep.

    swept holds the raw (unclamped) step. A vertex changed if ⌊uᵢ + ½⌋,
    without clipping to [0, K), differs from its label before the sweep.
    Vertices are visited in ascending order and updated in place, so a vertex
    sees the already reassigned values of lower-indexed neighbors. The new
    class keeps the fractional part and minimizes Σⱼ ŵᵢⱼ ρ(k + {uᵢ}, uⱼ)²;
    ties go to the smallest k. Only the chosen value is clamped.
    """
    if labels_before.shape != (swept.n,):
        raise ContractError("Label vector and state differ in length")
    work = swept.u.copy()
    rounded = np.floor(work + 0.5).astype(np.int64)
    changed = np.flatnonzero(rounded != labels_before)

    lower, upper = swept.lower, swept.upper
    classes = np.arange(n_classes, dtype=np.float64)
    for i in changed:
        nbrs, w_hat = graph.neighbors(i)
        if nbrs.size == 0:
            continue
        candidates = classes + frac(work[i])
        diff = rho(candidates[:, None], work[nbrs][None, :], n_classes)
        cost = (w_hat[None, :] * diff**2).sum(axis=1)
        work[i] = min(max(candidates[int(np.argmin(cost))], lower), upper)
    return StateVector(work, n_classes).clamped()


class MulticlassGLSolver:
    """Runs the minimization for one graph; not shared across threads mid-run."""

    def __init__(self, graph: SimilarityGraph, config: SolverConfig):
        self.graph = graph
        self.config = config

    def run(self, fidelity: FidelitySet) -> SolverResult:
        graph, config = self.graph, self.config
        if fidelity.n_classes != config.n_classes:
            raise ContractError(
                f"Fidelity has K={fidelity.n_classes}, solver has K={config.n_classes}"
            )
        if fidelity.size == 0:
            logger.warning(
                "Empty fidelity set: the flow may settle into a trivial steady state"
            )
        fidelity = FidelitySet(
            fidelity.vertices, fidelity.classes, config.mu, fidelity.n_classes
        )

        started = time.perf_counter()
        state = init_state(graph.n, config, fidelity)
        trace = RunTrace()
        iteration = 0
        stopped = False

        for eps in config.schedule().values():
            for _ in range(config.n_max):
                iteration += 1
                before = state.labels()
                updated = self.iterate(state, fidelity, eps, iteration)

                changes = int(np.count_nonzero(updated.labels() != before))
                breakdown = energy(updated, graph, fidelity, eps)
                trace.record(eps, breakdown, changes)
                self._log_progress(iteration, eps, breakdown.total, changes)

                step = float(np.max(np.abs(updated.u - state.u))) if state.n else 0.0
                state = updated
                if config.early_stop_tol is not None and step < config.early_stop_tol:
                    logger.info("Early stop at iteration %d (max |Δu| = %.3g)", iteration, step)
                    stopped = True
                    break
            if stopped:
                break
            logger.info("Finished ε=%.6g block at iteration %d", eps, iteration)

        trace.duration_s = time.perf_counter() - started
        return SolverResult(state=state, labels=state.labels(), trace=trace)

    def iterate(
        self,
        state: StateVector,
        fidelity: FidelitySet,
        eps: float,
        iteration: Optional[int] = None,
    ) -> StateVector:
        """One gradient step followed by the greedy relabel pass."""
        raw = gradient_step(state, self.graph, fidelity, eps, self.config.dt, iteration)
        return greedy_relabel_pass(raw, state.labels(), self.graph, self.config.n_classes)

    def _log_progress(self, iteration: int, eps: float, total: float, changes: int) -> None:
        if iteration % self.config.log_every == 0:
            logger.info(
                "iter %d: eps=%.4g total=%.6g label_changes=%d", iteration, eps, total, changes
            )
        else:
            logger.debug(
                "iter %d: eps=%.4g total=%.6g label_changes=%d", iteration, eps, total, changes
            )


def run(
    graph: SimilarityGraph, fidelity: FidelitySet, config: SolverConfig
) -> SolverResult:
    """Minimize the multiclass GL energy on graph from a seeded random start."""
    return MulticlassGLSolver(graph, config).run(fidelity)
