"""
Seeded synthetic benchmark generators.
"""

from typing import Callable, Dict

import numpy as np

from ..exceptions import ConfigError
from .base import DataSet


def gen_three_moons(
    seed: int,
    noise_variance: float = 0.02,
    dim: int = 100,
    per_class: int = 500,
) -> DataSet:
    """Three noisy half circles embedded in R^dim.

    Classes 0 and 1 are upper arcs of radius 1 centred at (0, 0) and (3, 0);
    class 2 is the lower arc of radius 1.5 centred at (1.5, 0.4). Gaussian
    noise of the given variance is added to every coordinate.
    """
    if dim < 2:
        raise ConfigError(f"Three moons needs dim >= 2, got {dim}")
    if noise_variance < 0:
        raise ConfigError(f"Noise variance must be >= 0, got {noise_variance}")
    rng = np.random.default_rng(seed)

    theta_top = rng.uniform(0.0, np.pi, size=(2, per_class))
    theta_bottom = rng.uniform(np.pi, 2.0 * np.pi, size=per_class)
    arcs = [
        np.column_stack([np.cos(theta_top[0]), np.sin(theta_top[0])]),
        np.column_stack([3.0 + np.cos(theta_top[1]), np.sin(theta_top[1])]),
        np.column_stack(
            [1.5 + 1.5 * np.cos(theta_bottom), 0.4 + 1.5 * np.sin(theta_bottom)]
        ),
    ]

    points = np.zeros((3 * per_class, dim))
    points[:, :2] = np.vstack(arcs)
    if noise_variance > 0:
        points += rng.normal(0.0, np.sqrt(noise_variance), size=points.shape)
    labels = np.repeat(np.arange(3), per_class)
    return DataSet(points, labels, n_classes=3, name="three-moons")


def swiss_roll_map(plane: np.ndarray) -> np.ndarray:
    """(x, y) → (x cos x, y, x sin x)."""
    x, y = plane[:, 0], plane[:, 1]
    return np.column_stack([x * np.cos(x), y, x * np.sin(x)])


SWISS_ROLL_MEANS = np.array([[7.5, 7.5], [7.5, 12.5], [12.5, 7.5], [12.5, 12.5]])


def gen_swiss_roll(seed: int, per_class: int = 400) -> DataSet:
    """Four unit-covariance Gaussians in the plane rolled up into R^3."""
    rng = np.random.default_rng(seed)
    plane = np.vstack(
        [rng.normal(mean, 1.0, size=(per_class, 2)) for mean in SWISS_ROLL_MEANS]
    )
    labels = np.repeat(np.arange(len(SWISS_ROLL_MEANS)), per_class)
    return DataSet(swiss_roll_map(plane), labels, n_classes=4, name="swiss-roll")


GENERATORS: Dict[str, Callable[[int], DataSet]] = {
    "three-moons": gen_three_moons,
    "swiss-roll": gen_swiss_roll,
}


def generate(name: str, seed: int) -> DataSet:
    try:
        generator = GENERATORS[name]
    except KeyError:
        known = ", ".join(sorted(GENERATORS))
        raise ConfigError(f"Unknown generator {name!r}; expected one of: {known}")
    return generator(seed)
