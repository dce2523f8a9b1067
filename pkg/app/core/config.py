import psutil
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    debug: bool = False
    log_level: str = "INFO"

    chunk_size: int = 1024
    reduction_block_size: int = 1024
    workers: int = 0  # 0 = one per logical core
    default_strategy: str = "shared"
    rng_seed: int = 0

    max_iter: int = 100
    tol: float = 1e-8

    replicated_budget_bytes: int = 64 * 1024

    bench_trials: int = 3
    bench_scale_divisor: int = 10
    memory_headroom: float = 0.5

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, value) -> str:
        if isinstance(value, str) and value.strip():
            return value.strip().upper()
        return "INFO"

    @property
    def resolved_workers(self) -> int:
        """Worker count with the 0 sentinel replaced by the logical core count."""
        if self.workers > 0:
            return self.workers
        return psutil.cpu_count(logical=True) or 1

    model_config = SettingsConfigDict(
        env_prefix="KMEANSPP_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()
