"""Pydantic schemas for benchmark scenarios and timing reports"""

from datetime import datetime

from pydantic import BaseModel, Field, field_validator, model_validator

from app.models.enums import LayoutStrategy, Phase, SweepAxis

REPORT_FIELDS = (
    "scenario",
    "n_points",
    "k",
    "strategy",
    "workers",
    "chunk_size",
    "phase",
    "trial",
    "wall_ms",
)


class ScenarioSpec(BaseModel):
    scenario: str = "custom"
    sweep: SweepAxis
    fixed: int = Field(gt=0, description="N for a clusters sweep, K for a points sweep")
    values: list[int] = Field(min_length=1)
    strategies: list[LayoutStrategy] = Field(default_factory=lambda: [LayoutStrategy.SHARED_MUTABLE])
    workers: list[int] = Field(default_factory=lambda: [1], min_length=1)
    trials: int = Field(3, ge=1)
    rng_seed: int = Field(0, ge=0, lt=2**64)
    chunk_size: int = Field(1024, ge=1)
    dims: int = Field(2, ge=1)
    blobs: int = Field(16, ge=1)
    spread: float = Field(1.0, gt=0)
    lloyd: bool = False
    max_iter: int = Field(10, ge=1)
    tol: float = Field(1e-8, ge=0)

    @field_validator("values")
    @classmethod
    def values_strictly_increasing(cls, value: list[int]) -> list[int]:
        if any(v < 1 for v in value):
            raise ValueError("axis values must be positive")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("axis values must be strictly increasing")
        return value

    @field_validator("workers")
    @classmethod
    def workers_positive(cls, value: list[int]) -> list[int]:
        if any(w < 1 for w in value):
            raise ValueError("worker counts must be positive")
        return value

    @model_validator(mode="after")
    def check_cells(self) -> "ScenarioSpec":
        for n_points, k in self.cells():
            if k > n_points:
                raise ValueError(f"k={k} exceeds n={n_points}")
        return self

    def cells(self) -> list[tuple[int, int]]:
        """(n_points, k) for every axis value."""
        if self.sweep is SweepAxis.CLUSTERS:
            return [(self.fixed, k) for k in self.values]
        return [(n, self.fixed) for n in self.values]


class TimingRow(BaseModel):
    scenario: str
    n_points: int = Field(ge=1)
    k: int = Field(ge=1)
    strategy: LayoutStrategy
    workers: int = Field(ge=1)
    chunk_size: int = Field(ge=1)
    phase: Phase
    trial: int = Field(ge=0)
    wall_ms: float = Field(ge=0)

    def cell(self) -> tuple[str, int, int, LayoutStrategy, int, int, Phase]:
        return (self.scenario, self.n_points, self.k, self.strategy, self.workers, self.chunk_size, self.phase)


class EnvironmentInfo(BaseModel):
    logical_cores: int
    physical_cores: int | None = None
    total_memory_bytes: int | None = None
    platform: str = ""
    python_version: str = ""
    numpy_version: str = ""
    timestamp: datetime


class TimingReport(BaseModel):
    environment: EnvironmentInfo
    rows: list[TimingRow] = []


class SummaryRow(BaseModel):
    scenario: str
    n_points: int
    k: int
    strategy: LayoutStrategy
    workers: int
    chunk_size: int
    phase: Phase
    trials: int
    mean_ms: float
    min_ms: float
    speedup: float
    strategy_delta_pct: float | None = None


class BenchSummary(BaseModel):
    rows: list[SummaryRow]
    crossover: list[SummaryRow] = []
