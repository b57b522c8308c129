"""
Solver configuration, epsilon schedules and run traces.
"""

import csv
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..model.energy import EnergyBreakdown

TRACE_COLUMNS = [
    "iter",
    "epsilon",
    "smoothing",
    "potential",
    "fidelity",
    "total",
    "label_changes",
]


class EpsilonSchedule(ABC):
    """Sequence of interface-width values, each held for n_max iterations."""

    @abstractmethod
    def values(self) -> Iterator[float]:
        """Yield the ε values in the order they are used."""
        pass

    @abstractmethod
    def get_schedule_name(self) -> str:
        pass


@dataclass(frozen=True)
class FixedEpsilon(EpsilonSchedule):
    eps: float

    def values(self) -> Iterator[float]:
        yield self.eps

    def get_schedule_name(self) -> str:
        return "fixed"


@dataclass(frozen=True)
class AdaptiveEpsilon(EpsilonSchedule):
    """ε₀, ε₀(1−Δ), ε₀(1−Δ)², ... down to the last value still ≥ ε_f."""

    eps0: float
    eps_f: float
    delta: float

    def values(self) -> Iterator[float]:
        eps = self.eps0
        while eps >= self.eps_f:
            yield eps
            eps *= 1.0 - self.delta

    def get_schedule_name(self) -> str:
        return "adaptive"


class SolverConfig(BaseModel):
    """Parameters of one multiclass GL minimization.

    Exactly one of ``eps`` (fixed schedule) or the triple
    ``eps0`` / ``eps_f`` / ``delta_eps`` (adaptive schedule) is set.
    """

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    n_classes: int = Field(alias="K", ge=2)
    mu: float = Field(30.0, gt=0)
    dt: float = Field(0.01, gt=0)
    eps: Optional[float] = Field(None, gt=0)
    eps0: Optional[float] = Field(None, gt=0)
    eps_f: Optional[float] = Field(None, alias="epsf", gt=0)
    delta_eps: Optional[float] = Field(None, gt=0, lt=1)
    n_max: int = Field(1000, alias="nmax", ge=1)
    seed: int = Field(0, ge=0)
    early_stop_tol: Optional[float] = Field(None, gt=0)
    log_every: int = Field(100, ge=1)

    @model_validator(mode="after")
    def _check_schedule(self) -> "SolverConfig":
        adaptive = (self.eps0, self.eps_f, self.delta_eps)
        if self.eps is not None:
            if any(v is not None for v in adaptive):
                raise ValueError("Give either eps or eps0/epsf/delta_eps, not both")
            return self
        if any(v is None for v in adaptive):
            raise ValueError("Adaptive schedule needs eps0, epsf and delta_eps")
        if not self.eps0 > self.eps_f:
            raise ValueError(f"eps0 ({self.eps0}) must exceed epsf ({self.eps_f})")
        return self

    def schedule(self) -> EpsilonSchedule:
        if self.eps is not None:
            return FixedEpsilon(self.eps)
        return AdaptiveEpsilon(self.eps0, self.eps_f, self.delta_eps)


@dataclass
class RunTrace:
    """Per-iteration energy breakdown and label-change counts of one run."""

    epsilons: List[float] = field(default_factory=list)
    energies: List[EnergyBreakdown] = field(default_factory=list)
    label_changes: List[int] = field(default_factory=list)
    duration_s: float = 0.0

    def record(self, eps: float, breakdown: EnergyBreakdown, changes: int) -> None:
        self.epsilons.append(eps)
        self.energies.append(breakdown)
        self.label_changes.append(changes)

    def __len__(self) -> int:
        return len(self.energies)

    def series(self, name: str) -> List[float]:
        """One energy component ("smoothing", "potential", "fidelity", "total")."""
        return [getattr(e, name) for e in self.energies]

    def rows(self) -> List[list]:
        return [
            [it + 1, eps, e.smoothing, e.potential, e.fidelity, e.total, changes]
            for it, (eps, e, changes) in enumerate(
                zip(self.epsilons, self.energies, self.label_changes)
            )
        ]

    def to_csv(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)
            for row in self.rows():
                writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
