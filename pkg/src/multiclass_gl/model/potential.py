"""
Scalar building blocks of the multiclass energy.

Every function accepts a scalar or a numpy array and returns the same shape.
"""

import numpy as np


def frac(x):
    """Fractional part x − ⌊x⌋ in [0, 1), using a true floor for negatives."""
    f = np.subtract(x, np.floor(x))
    # x − ⌊x⌋ rounds up to 1.0 for tiny negative x
    folded = np.where(f >= 1.0, 0.0, f)
    return folded if np.ndim(folded) else float(folded)


def periodic_well(x):
    """Φ_M(x) = ½{x}²({x}−1)², zero at every integer."""
    f = frac(x)
    return 0.5 * f**2 * (f - 1.0) ** 2


def periodic_well_deriv(x):
    """Φ′_M(x) = 2{x}³ − 3{x}² + {x}."""
    f = frac(x)
    return 2.0 * f**3 - 3.0 * f**2 + f


def r_hat(x):
    """Distance from x to the nearest half-integer, in [0, ½]."""
    return np.abs(0.5 - frac(x))


def r_hat_deriv(x):
    """sign({x} − ½), with 0 at half-integers and at integers."""
    f = frac(x)
    slope = np.sign(f - 0.5)
    return np.where(f == 0.0, 0.0, slope)


def label_of(x, n_classes: int):
    """Nearest integer ⌊x + ½⌋ clamped into [0, n_classes − 1]."""
    labels = np.clip(np.floor(np.add(x, 0.5)), 0, n_classes - 1).astype(np.int64)
    return labels if np.ndim(labels) else int(labels)


def rho(u_i, u_j, n_classes: int):
    """Generalized difference: r̂ᵢ + r̂ⱼ across classes, |r̂ᵢ − r̂ⱼ| within one."""
    ri = r_hat(u_i)
    rj = r_hat(u_j)
    same = label_of(u_i, n_classes) == label_of(u_j, n_classes)
    return np.where(same, np.abs(ri - rj), ri + rj)
