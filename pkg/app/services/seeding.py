"""k-means++ center selection.

Both paths run the same round loop: update the nearest-distance table against the newest
center, reduce it with the fixed summation tree, draw one uniform on the coordinator and
invert the D² cumulative distribution. The parallel path only changes how the update pass
and its block partials are executed, so for a given seed it picks exactly the serial centers.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from app.core.chunks import ChunkRange
from app.core.dataset import CentroidSet, Dataset
from app.core.errors import ContractError, InvalidRequestError, KMeansError
from app.core.executor import WorkerPool
from app.core.rng import RngStream
from app.core.summation import block_prefix, combine
from app.models.enums import LayoutStrategy, SeedingMode
from app.models.results import NearestDistanceTable, SeedingResult
from app.schemas.exec import ExecConfig
from app.services.layout import build_views, ensure_replicated_budget, prepare_points
from app.services.reduce import MinUpdateResult, ReductionPlan, block_sums, parallel_min_update

logger = logging.getLogger(__name__)

RoundObserver = Callable[[int, NearestDistanceTable], None]
Updater = Callable[[NearestDistanceTable, CentroidSet], MinUpdateResult]


class DegenerateWeightsError(KMeansError):
    """Every remaining point coincides with a chosen center (total weight is zero)."""


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Read-only selection weights with the running totals of their block partials."""

    values: np.ndarray
    cumulative: np.ndarray
    total: float
    block_size: int = 1024

    @classmethod
    def from_table(cls, table: NearestDistanceTable) -> "WeightVector":
        values = table.dsq.view()
        values.setflags(write=False)
        return cls(values, table.cumulative, table.total, table.block_size)

    @classmethod
    def from_values(
        cls,
        values: np.ndarray | list[float],
        plan: ReductionPlan | None = None,
        pool: WorkerPool | None = None,
    ) -> "WeightVector":
        plan = plan or ReductionPlan()
        values = np.array(values, dtype=np.float64).ravel()
        if values.size and (not np.all(np.isfinite(values)) or values.min() < 0):
            raise ContractError("Weights must be finite and nonnegative")
        values.setflags(write=False)
        cumulative, total = combine(block_sums(values, plan, pool))
        return cls(values, cumulative, total, plan.block_size)


def sample_weighted(weights: WeightVector, u: float) -> int:
    """Smallest index whose inclusive prefix sum exceeds ``u * total``.

    P(i) = w_i / Σ w. The prefix sums follow the same block tree as the total, so the scan is
    monotone and an index with zero weight can never be returned.
    """
    if not 0.0 <= u < 1.0:
        raise ContractError(f"u must lie in [0, 1), got {u}")
    if not weights.total > 0.0:
        raise DegenerateWeightsError("All selection weights are zero")
    target = u * weights.total
    block = int(np.searchsorted(weights.cumulative, target, side="right"))
    if block >= weights.cumulative.shape[0]:
        # u * total rounded up to total itself
        return int(np.flatnonzero(weights.values > 0.0)[-1])
    prefix = block_prefix(weights.values, weights.cumulative, block, weights.block_size)
    return block * weights.block_size + int(np.searchsorted(prefix, target, side="right"))


def _validate_request(data: Dataset, k: int, first_index: int | None) -> None:
    if not 1 <= k <= data.n:
        raise InvalidRequestError(f"k must lie in [1, n={data.n}], got {k}")
    if first_index is not None and not 0 <= first_index < data.n:
        raise InvalidRequestError(f"first_index {first_index} outside [0, {data.n})")


def _run_rounds(
    data: Dataset,
    k: int,
    rng: RngStream,
    plan: ReductionPlan,
    update: Updater,
    *,
    first_index: int | None,
    on_round: RoundObserver | None,
) -> tuple[CentroidSet, np.ndarray, list[int], np.ndarray | None]:
    centers = CentroidSet.with_capacity(k, data.dims)
    chosen = np.zeros(data.n, dtype=bool)
    table = NearestDistanceTable.unset(data.n, plan.block_size)
    totals = np.zeros(k - 1, dtype=np.float64)
    degenerate_rounds: list[int] = []
    evaluations: np.ndarray | None = None

    first = rng.integer(data.n) if first_index is None else first_index
    centers.add(data, first)
    chosen[first] = True

    for round_no in range(1, k):
        result = update(table, centers)
        table.absorb(result.partials)
        evaluations = result.evaluations if evaluations is None else evaluations + result.evaluations
        if on_round is not None:
            on_round(round_no, table)

        u = rng.uniform()
        try:
            index = sample_weighted(WeightVector.from_table(table), u)
            totals[round_no - 1] = table.total
        except DegenerateWeightsError:
            remaining = np.flatnonzero(~chosen)
            index = int(remaining[int(u * remaining.shape[0])])
            degenerate_rounds.append(round_no)
            logger.warning("Round %d: all weights zero, picked point %d uniformly", round_no, index)
        centers.add(data, index)
        chosen[index] = True
        logger.debug("Round %d: chose point %d (total weight %.6g)", round_no, index, table.total)

    return centers, totals, degenerate_rounds, evaluations


def seed_serial(
    data: Dataset,
    k: int,
    rng: RngStream,
    *,
    plan: ReductionPlan | None = None,
    first_index: int | None = None,
    on_round: RoundObserver | None = None,
) -> SeedingResult:
    """Serial k-means++: one pass over all points per round, no worker pool."""
    _validate_request(data, k, first_index)
    plan = plan or ReductionPlan()
    whole = [ChunkRange(0, data.n)]

    def update(table: NearestDistanceTable, centers: CentroidSet) -> MinUpdateResult:
        return parallel_min_update(table.dsq, data, centers.coords[-1], whole, plan)

    centers, totals, degenerate, evaluations = _run_rounds(
        data, k, rng, plan, update, first_index=first_index, on_round=on_round
    )
    return SeedingResult(
        centers=centers,
        per_round_total_weight=totals,
        mode=SeedingMode.SERIAL,
        degenerate=bool(degenerate),
        degenerate_rounds=degenerate,
        chunk_evaluations=evaluations,
    )


def seed_parallel(
    data: Dataset,
    k: int,
    rng: RngStream,
    cfg: ExecConfig,
    *,
    first_index: int | None = None,
    on_round: RoundObserver | None = None,
) -> SeedingResult:
    """Chunked k-means++ over a worker pool.

    Each round rebuilds the worker views for the configured layout strategy before the
    parallel pass; pool start-up and placement costs belong to the run.
    """
    _validate_request(data, k, first_index)
    if cfg.strategy is LayoutStrategy.REPLICATED_CENTROIDS:
        ensure_replicated_budget(k, data.dims)
    plan = ReductionPlan(cfg.block_size)
    chunks = cfg.chunks(data.n)

    with WorkerPool(cfg.workers) as pool:
        points = prepare_points(data, cfg.strategy)

        def update(table: NearestDistanceTable, centers: CentroidSet) -> MinUpdateResult:
            views = build_views(data, centers, cfg.strategy, pool.workers, points=points)
            return parallel_min_update(
                table.dsq, data, centers.coords[-1], chunks, plan, pool=pool, views=views
            )

        centers, totals, degenerate, evaluations = _run_rounds(
            data, k, rng, plan, update, first_index=first_index, on_round=on_round
        )

    logger.debug("Parallel seeding: k=%d, %d chunks, %d workers", k, len(chunks), cfg.workers)
    return SeedingResult(
        centers=centers,
        per_round_total_weight=totals,
        mode=SeedingMode.PARALLEL,
        strategy=cfg.strategy,
        degenerate=bool(degenerate),
        degenerate_rounds=degenerate,
        chunk_evaluations=evaluations,
    )


def seed_uniform(data: Dataset, k: int, rng: RngStream) -> SeedingResult:
    """Plain random initialization: k distinct points chosen uniformly."""
    _validate_request(data, k, None)
    swapped: dict[int, int] = {}
    picks: list[int] = []
    # partial Fisher-Yates over [0, n)
    for step in range(k):
        j = step + rng.integer(data.n - step)
        picks.append(swapped.get(j, j))
        swapped[j] = swapped.get(step, step)
    return SeedingResult(
        centers=CentroidSet.from_indices(data, picks),
        per_round_total_weight=np.zeros(0, dtype=np.float64),
    )


def seed(
    data: Dataset,
    k: int,
    rng: RngStream,
    cfg: ExecConfig,
    mode: SeedingMode = SeedingMode.PARALLEL,
) -> SeedingResult:
    if mode is SeedingMode.SERIAL:
        return seed_serial(data, k, rng, plan=ReductionPlan(cfg.block_size))
    return seed_parallel(data, k, rng, cfg)
