"""Execution configuration for the chunked passes"""

from pydantic import BaseModel, ConfigDict, Field

from app.core.chunks import ChunkRange, num_chunks, plan_chunks
from app.core.config import settings
from app.models.enums import LayoutStrategy


class ExecConfig(BaseModel):
    chunk_size: int = Field(1024, ge=1)
    workers: int = Field(default_factory=lambda: settings.resolved_workers, ge=1)
    strategy: LayoutStrategy = LayoutStrategy.SHARED_MUTABLE
    rng_seed: int = Field(0, ge=0, lt=2**64)
    block_size: int = Field(1024, ge=1, description="Leaf size of the fixed summation tree")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_settings(cls, **overrides) -> "ExecConfig":
        """Defaults from environment settings, with explicit (non-None) overrides on top."""
        values = {
            "chunk_size": settings.chunk_size,
            "workers": settings.resolved_workers,
            "strategy": settings.default_strategy,
            "rng_seed": settings.rng_seed,
            "block_size": settings.reduction_block_size,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls.model_validate(values)

    def num_chunks(self, n: int) -> int:
        return num_chunks(n, self.chunk_size)

    def chunks(self, n: int) -> list[ChunkRange]:
        return plan_chunks(n, self.chunk_size)
