"""
Multiclass GL energy: periodic well, half-integer distance, generalized
difference, energy breakdown and gradients.
"""

from .energy import (
    EnergyBreakdown,
    energy,
    smoothing_gradient,
    smoothing_gradient_term,
)
from .potential import (
    frac,
    label_of,
    periodic_well,
    periodic_well_deriv,
    r_hat,
    r_hat_deriv,
    rho,
)
from .state import StateVector

__all__ = [
    "EnergyBreakdown",
    "StateVector",
    "energy",
    "frac",
    "label_of",
    "periodic_well",
    "periodic_well_deriv",
    "r_hat",
    "r_hat_deriv",
    "rho",
    "smoothing_gradient",
    "smoothing_gradient_term",
]
