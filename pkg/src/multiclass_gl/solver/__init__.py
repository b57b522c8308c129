"""
Solver layer: gradient-descent minimization of the multiclass GL energy.

This layer handles:
- Epsilon schedules (fixed and geometrically decreasing)
- Jacobi gradient sweeps and the sequential greedy relabel pass
- Run orchestration and per-iteration energy traces
"""

from .base import (
    AdaptiveEpsilon,
    EpsilonSchedule,
    FixedEpsilon,
    RunTrace,
    SolverConfig,
)
from .gradient_flow import (
    MulticlassGLSolver,
    SolverResult,
    gradient_step,
    gradient_sweep,
    greedy_relabel_pass,
    init_state,
    run,
)

__all__ = [
    "AdaptiveEpsilon",
    "EpsilonSchedule",
    "FixedEpsilon",
    "MulticlassGLSolver",
    "RunTrace",
    "SolverConfig",
    "SolverResult",
    "gradient_step",
    "gradient_sweep",
    "greedy_relabel_pass",
    "init_state",
    "run",
]
