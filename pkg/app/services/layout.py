"""Data placement for the parallel passes.

Three placements stand in for the GPU memory kinds a k-means++ kernel can read from:

* ``SharedMutable``: every worker reads the dataset's own row-major store and the single
  centroid buffer the coordinator grows in place (global memory).
* ``ReplicatedCentroids``: each worker gets a private copy of the current centroid list,
  refreshed before every parallel pass and capped at 64 KiB (constant memory).
* ``ReadOnlyArena``: the points are sealed once, before seeding, into a read-only
  column-major region that all workers share (texture memory).

Point data is never copied per worker. Placement changes timing only; every kernel sees the
same coordinate values in the same order, so outputs are bit-identical across strategies.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from app.core.config import settings
from app.core.dataset import CentroidSet, Dataset
from app.core.errors import ContractError, KMeansError
from app.models.enums import LayoutStrategy

logger = logging.getLogger(__name__)


class CapacityError(KMeansError):
    pass


class RowMajorPoints:
    """Column accessor over the dataset's shared row-major store."""

    def __init__(self, data: Dataset) -> None:
        self._points = data.points
        self.dims = data.dims

    def columns(self, start: int, stop: int) -> list[np.ndarray]:
        block = self._points[start:stop]
        return [block[:, j] for j in range(self.dims)]


class ReadOnlyArena:
    """Sealed column-major copy of the points, built once and shared by all workers."""

    def __init__(self, data: Dataset) -> None:
        arena = np.ascontiguousarray(data.points.T)
        arena.setflags(write=False)
        self._arena = arena
        self.dims = data.dims
        self.nbytes = int(arena.nbytes)

    def columns(self, start: int, stop: int) -> list[np.ndarray]:
        return [self._arena[j, start:stop] for j in range(self.dims)]


PointSource = RowMajorPoints | ReadOnlyArena


@dataclass(eq=False)
class WorkerViews:
    strategy: LayoutStrategy
    points: PointSource
    centroids: list[np.ndarray]
    placement: dict[str, int | str | bool] = field(default_factory=dict)

    @property
    def workers(self) -> int:
        return len(self.centroids)

    def centroids_for(self, worker: int) -> np.ndarray:
        return self.centroids[worker]

    def newest_center(self, worker: int) -> np.ndarray:
        return self.centroids[worker][-1]


def replicated_bytes(k: int, dims: int) -> int:
    return k * dims * 8


def ensure_replicated_budget(k: int, dims: int, budget: int | None = None) -> None:
    budget = settings.replicated_budget_bytes if budget is None else budget
    needed = replicated_bytes(k, dims)
    if needed > budget:
        raise CapacityError(
            f"Replicated centroids need {needed} bytes per worker (k={k}, dims={dims}), "
            f"over the {budget // 1024} KiB limit ({budget} bytes)"
        )


def prepare_points(data: Dataset, strategy: LayoutStrategy) -> PointSource:
    """Point placement established once per run, before the first parallel pass."""
    if strategy is LayoutStrategy.READ_ONLY_ARENA:
        arena = ReadOnlyArena(data)
        logger.debug("Sealed %d-byte read-only arena", arena.nbytes)
        return arena
    return RowMajorPoints(data)


def build_views(
    data: Dataset,
    centers: CentroidSet,
    strategy: LayoutStrategy,
    workers: int,
    *,
    points: PointSource | None = None,
) -> WorkerViews:
    """Per-worker read handles for the next parallel pass.

    ``points`` reuses a placement from :func:`prepare_points`; without it one is built here.
    """
    if workers < 1:
        raise ContractError(f"workers must be positive, got {workers}")
    if centers.k < 1:
        raise ContractError("build_views needs at least one center")
    if centers.dims != data.dims:
        raise ContractError(f"Centers have {centers.dims} dims, dataset has {data.dims}")
    if points is None:
        points = prepare_points(data, strategy)

    coords = centers.coords
    placement: dict[str, int | str | bool] = {
        "strategy": strategy.value,
        "workers": workers,
        "k": centers.k,
        "points_shared": True,
    }
    if strategy is LayoutStrategy.REPLICATED_CENTROIDS:
        ensure_replicated_budget(centers.k, centers.dims)
        copies = []
        for _ in range(workers):
            private = coords.copy()
            private.setflags(write=False)
            copies.append(private)
        placement["replicated_bytes_per_worker"] = replicated_bytes(centers.k, centers.dims)
        placement["centroids_shared"] = False
        return WorkerViews(strategy, points, copies, placement)

    placement["replicated_bytes_per_worker"] = 0
    placement["centroids_shared"] = True
    return WorkerViews(strategy, points, [coords] * workers, placement)
