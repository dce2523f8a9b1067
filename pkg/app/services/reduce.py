"""Deterministic data-parallel reduction.

Block partials are computed by workers over disjoint, block-aligned stripes and combined on
the coordinator in a fixed order, so the bits never depend on the worker count.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from app.core.chunks import ChunkRange, plan_chunks, span, stripe
from app.core.dataset import Dataset, squared_distance_columns
from app.core.errors import ContractError
from app.core.executor import WorkerPool
from app.core.summation import block_partials, combine
from app.services.layout import RowMajorPoints, WorkerViews

logger = logging.getLogger(__name__)

# Points per kernel call inside a stripe; keeps temporaries cache resident.
SLAB = 1 << 15


@dataclass(frozen=True, slots=True)
class ReductionPlan:
    block_size: int = 1024

    def __post_init__(self) -> None:
        if self.block_size < 1:
            raise ContractError(f"block_size must be positive, got {self.block_size}")

    def num_blocks(self, n: int) -> int:
        return -(-n // self.block_size)

    def blocks(self, n: int) -> list[ChunkRange]:
        return plan_chunks(n, self.block_size) if n else []


@dataclass(eq=False)
class MinUpdateResult:
    """Outcome of one fused min-update pass.

    ``partials`` are the fixed-tree block sums of the updated table; ``evaluations`` counts the
    distance evaluations each chunk performed.
    """

    partials: np.ndarray
    evaluations: np.ndarray

    @property
    def total(self) -> float:
        return combine(self.partials)[1]


def block_sums(values: np.ndarray, plan: ReductionPlan, pool: WorkerPool | None = None) -> np.ndarray:
    """Fixed-tree block partials of ``values``, computed over block-aligned worker stripes."""
    n = values.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.float64)
    if pool is None or pool.workers == 1:
        return block_partials(values, plan.block_size)
    stripes = stripe(plan.blocks(n), pool.workers)
    parts = pool.map(lambda run: block_partials(values[span(run).as_slice()], plan.block_size), stripes)
    return np.concatenate(parts)


def parallel_sum(
    values: np.ndarray | list[float],
    plan: ReductionPlan | None = None,
    pool: WorkerPool | None = None,
) -> float:
    """Sum with the fixed two-level tree; the empty input sums to 0.0."""
    plan = plan or ReductionPlan()
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.shape[0] == 0:
        return 0.0
    return combine(block_sums(values, plan, pool))[1]


def _min_update_span(
    dsq: np.ndarray,
    columns_of: Callable[[int, int], list[np.ndarray]],
    center: np.ndarray,
    start: int,
    stop: int,
    block_size: int | None = None,
) -> np.ndarray | None:
    """Min-update ``dsq[start:stop]`` slab by slab.

    With ``block_size`` set (and ``start`` on a block boundary) slabs are whole multiples of the
    block size and each slab's block partials are taken while it is still in cache.
    """
    step = SLAB if block_size is None else max(block_size, SLAB - SLAB % block_size)
    dist = np.empty(min(step, stop - start), dtype=np.float64)
    scratch = np.empty_like(dist)
    partials: list[np.ndarray] = []
    for lo in range(start, stop, step):
        hi = min(lo + step, stop)
        size = hi - lo
        squared_distance_columns(columns_of(lo, hi), center, out=dist[:size], scratch=scratch[:size])
        np.minimum(dsq[lo:hi], dist[:size], out=dsq[lo:hi])
        if block_size is not None:
            partials.append(block_partials(dsq[lo:hi], block_size))
    if block_size is None:
        return None
    return np.concatenate(partials)


def parallel_min_update(
    dsq: np.ndarray,
    dataset: Dataset,
    center: np.ndarray,
    chunks: list[ChunkRange],
    plan: ReductionPlan | None = None,
    pool: WorkerPool | None = None,
    views: WorkerViews | None = None,
) -> MinUpdateResult:
    """Lower every entry of ``dsq`` to its squared distance from ``center`` where smaller.

    Chunks are dealt to workers as contiguous stripes, each stripe owning a disjoint slice of
    ``dsq``. When the stripes start on reduction-block boundaries the block partials are
    produced in the same worker task; otherwise a second block-aligned pass computes them.
    ``views`` supplies per-worker point and centroid handles; without it workers read the
    dataset and ``center`` directly.
    """
    plan = plan or ReductionPlan()
    center = np.asarray(center, dtype=np.float64)
    if center.shape != (dataset.dims,):
        raise ContractError(f"Center has shape {center.shape}, dataset points have {dataset.dims} dims")
    if dsq.shape != (dataset.n,):
        raise ContractError(f"Distance table holds {dsq.shape[0]} entries for {dataset.n} points")
    if not chunks or chunks[0].start != 0 or chunks[-1].stop != dataset.n:
        raise ContractError("Chunks must cover [0, n)")

    workers = pool.workers if pool is not None else 1
    stripes = stripe(chunks, workers)
    aligned = all(run[0].start % plan.block_size == 0 for run in stripes)
    direct = RowMajorPoints(dataset)

    def update(job: tuple[int, list[ChunkRange]]) -> np.ndarray | None:
        worker, run = job
        whole = span(run)
        if views is not None:
            points, worker_center = views.points, views.newest_center(worker)
        else:
            points, worker_center = direct, center
        return _min_update_span(
            dsq,
            points.columns,
            worker_center,
            whole.start,
            whole.stop,
            plan.block_size if aligned else None,
        )

    jobs = list(enumerate(stripes))
    if pool is None:
        parts = [update(job) for job in jobs]
    else:
        parts = pool.map(update, jobs)

    if aligned:
        partials = np.concatenate(parts)
    else:
        partials = block_sums(dsq, plan, pool)

    evaluations = np.fromiter((chunk.size for chunk in chunks), dtype=np.int64, count=len(chunks))
    return MinUpdateResult(partials=partials, evaluations=evaluations)
