"""
Validated schema of a run configuration file.
"""

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..datasets.fidelity import FidelitySpec
from ..graph.base import GraphConfig
from ..solver.base import SolverConfig


class DatasetSection(BaseModel):
    """Either a named generator with a seed or a file on disk."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    generator: Optional[Literal["three-moons", "swiss-roll"]] = None
    seed: int = Field(0, ge=0)
    path: Optional[str] = None
    format: Literal["csv", "mnist"] = "csv"
    label_column: Optional[Union[int, str]] = None
    subsample: Optional[int] = Field(None, ge=2)
    subsample_seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_source(self) -> "DatasetSection":
        if (self.generator is None) == (self.path is None):
            raise ValueError("dataset needs exactly one of generator or path")
        return self

    def describe(self) -> str:
        if self.generator is not None:
            return self.generator
        return self.path


class BaselineSection(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    restarts: int = Field(10, ge=1)
    n_eigenvectors: Optional[int] = Field(None, ge=1)
    normalize_rows: bool = False


class RunConfigFile(BaseModel):
    """One experiment: dataset, graph, method, parameters and repetitions."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = "experiment"
    dataset: DatasetSection
    graph: GraphConfig = GraphConfig()
    method: Literal["multiclass_gl", "kmeans", "spectral"] = "multiclass_gl"
    solver: SolverConfig
    fidelity: Optional[FidelitySpec] = None
    baseline: BaselineSection = BaselineSection()
    runs: int = Field(1, ge=1)
    output_dir: str = "results"
    graph_cache: Optional[str] = None
    exclude_fidelity: bool = False
    record_timings: bool = False
    artifacts: bool = True
    n_jobs: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _check_fidelity(self) -> "RunConfigFile":
        if self.method == "multiclass_gl" and self.fidelity is None:
            raise ValueError("multiclass_gl runs need a fidelity section")
        return self

    @property
    def n_classes(self) -> int:
        return self.solver.n_classes
