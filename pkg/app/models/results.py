"""Result and working-state containers shared by the services."""

from dataclasses import dataclass, field

import numpy as np

from app.core.dataset import CentroidSet
from app.core.summation import combine
from app.models.enums import LayoutStrategy, SeedingMode


@dataclass(eq=False)
class NearestDistanceTable:
    """Squared distance of every point to its nearest chosen center.

    Starts at +inf everywhere; after each center addition it holds the block partials of the
    fixed summation tree, their running totals and the cached grand total.
    """

    dsq: np.ndarray
    block_size: int = 1024
    partials: np.ndarray = field(default_factory=lambda: np.zeros(0))
    cumulative: np.ndarray = field(default_factory=lambda: np.zeros(0))
    total: float = float("inf")
    updates: int = 0

    @classmethod
    def unset(cls, n: int, block_size: int = 1024) -> "NearestDistanceTable":
        return cls(dsq=np.full(n, np.inf, dtype=np.float64), block_size=block_size)

    @property
    def n(self) -> int:
        return int(self.dsq.shape[0])

    @property
    def is_seeded(self) -> bool:
        return self.updates > 0

    def absorb(self, partials: np.ndarray) -> None:
        """Record the block partials produced by an update pass."""
        self.partials = partials
        self.cumulative, self.total = combine(partials)
        self.updates += 1


@dataclass(eq=False)
class SeedingResult:
    centers: CentroidSet
    per_round_total_weight: np.ndarray
    mode: SeedingMode = SeedingMode.SERIAL
    strategy: LayoutStrategy = LayoutStrategy.SHARED_MUTABLE
    degenerate: bool = False
    degenerate_rounds: list[int] = field(default_factory=list)
    chunk_evaluations: np.ndarray | None = None

    @property
    def rounds(self) -> int:
        return self.centers.k

    @property
    def indices(self) -> np.ndarray:
        return self.centers.indices

    @property
    def evaluations(self) -> int:
        if self.chunk_evaluations is None:
            return 0
        return int(self.chunk_evaluations.sum())


@dataclass(eq=False)
class ClusteringResult:
    labels: np.ndarray
    centroids: CentroidSet
    cost: float
    iterations: int
    converged: bool
    cost_history: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.centroids.k
