"""Lloyd clustering on top of the seeding step."""

import logging
from typing import NamedTuple

import numpy as np

from app.core.chunks import ChunkRange, span, stripe
from app.core.dataset import SYNTHETIC_INDEX, CentroidSet, Dataset
from app.core.errors import ContractError
from app.core.executor import WorkerPool
from app.core.rng import RngStream
from app.core.summation import fixed_tree_sum
from app.models.enums import InitMethod, SeedingMode
from app.models.results import ClusteringResult, SeedingResult
from app.schemas.exec import ExecConfig
from app.services.layout import PointSource, build_views, prepare_points
from app.services.reduce import ReductionPlan, parallel_sum
from app.services.seeding import seed, seed_uniform

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 100
DEFAULT_TOL = 1e-8


class Assignment(NamedTuple):
    labels: np.ndarray
    cost: float
    distances: np.ndarray


def _assign_span(
    columns: list[np.ndarray],
    centroids: np.ndarray,
    labels: np.ndarray,
    best: np.ndarray,
) -> None:
    dist = np.empty_like(best)
    scratch = np.empty_like(best)
    for c, center in enumerate(centroids):
        np.subtract(columns[0], center[0], out=dist)
        np.multiply(dist, dist, out=dist)
        for column, coord in zip(columns[1:], center[1:].tolist(), strict=True):
            np.subtract(column, coord, out=scratch)
            np.multiply(scratch, scratch, out=scratch)
            np.add(dist, scratch, out=dist)
        if c == 0:
            best[:] = dist
            labels[:] = 0
            continue
        closer = dist < best
        labels[closer] = c
        np.minimum(best, dist, out=best)


def assign(
    data: Dataset,
    centroids: CentroidSet,
    cfg: ExecConfig,
    *,
    pool: WorkerPool | None = None,
    points: PointSource | None = None,
) -> Assignment:
    """Nearest centroid for every point; ties go to the lowest centroid index."""
    if centroids.k < 1:
        raise ContractError("assign needs at least one centroid")
    if centroids.dims != data.dims:
        raise ContractError(f"Centroids have {centroids.dims} dims, dataset has {data.dims}")
    plan = ReductionPlan(cfg.block_size)
    workers = pool.workers if pool is not None else 1
    views = build_views(data, centroids, cfg.strategy, workers, points=points)
    labels = np.empty(data.n, dtype=np.int64)
    distances = np.empty(data.n, dtype=np.float64)

    def work(job: tuple[int, list[ChunkRange]]) -> None:
        worker, run = job
        whole = span(run)
        _assign_span(
            views.points.columns(whole.start, whole.stop),
            views.centroids_for(worker),
            labels[whole.as_slice()],
            distances[whole.as_slice()],
        )

    jobs = list(enumerate(stripe(cfg.chunks(data.n), workers)))
    if pool is None:
        for job in jobs:
            work(job)
    else:
        pool.map(work, jobs)
    return Assignment(labels, parallel_sum(distances, plan, pool), distances)


def update_centroids(
    data: Dataset,
    labels: np.ndarray,
    k: int,
    *,
    distances: np.ndarray | None = None,
    block_size: int = 1024,
    pool: WorkerPool | None = None,
) -> CentroidSet:
    """Mean of every cluster, with empty clusters reseeded to the farthest points.

    Per-coordinate sums use the fixed summation tree over each cluster's points in index
    order. ``distances`` are the squared distances of the points to their assigned centroids;
    when omitted they are measured against the new means. Each empty cluster, in index order,
    takes the point with the largest remaining distance, which then leaves the candidate pool.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (data.n,):
        raise ContractError(f"Expected {data.n} labels, got shape {labels.shape}")
    if k < 1 or labels.min() < 0 or labels.max() >= k:
        raise ContractError(f"Labels must lie in [0, {k})")

    counts = np.bincount(labels, minlength=k)
    order = np.argsort(labels, kind="stable")
    grouped = data.points[order]
    bounds = np.concatenate(([0], np.cumsum(counts)))

    def cluster_mean(c: int) -> np.ndarray:
        members = grouped[bounds[c] : bounds[c + 1]]
        sums = [fixed_tree_sum(members[:, j], block_size) for j in range(data.dims)]
        return np.asarray(sums) / counts[c]

    coords = np.zeros((k, data.dims), dtype=np.float64)
    indices = np.full(k, SYNTHETIC_INDEX, dtype=np.int64)
    filled = [c for c in range(k) if counts[c]]
    means = pool.map(cluster_mean, filled) if pool is not None else [cluster_mean(c) for c in filled]
    for c, mean in zip(filled, means, strict=True):
        coords[c] = mean

    empty = np.flatnonzero(counts == 0)
    if empty.size:
        if distances is None:
            distances = np.zeros(data.n, dtype=np.float64)
            for j in range(data.dims):
                diff = data.points[:, j] - coords[labels, j]
                distances += diff * diff
        candidates = np.array(distances, dtype=np.float64, copy=True)
        for c in empty.tolist():
            far = int(np.argmax(candidates))
            coords[c] = data.points[far]
            indices[c] = far
            candidates[far] = -1.0
            logger.debug("Cluster %d empty, reseeded to point %d", c, far)
    return CentroidSet(coords, indices)


def lloyd(
    data: Dataset,
    init: CentroidSet,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    cfg: ExecConfig | None = None,
) -> ClusteringResult:
    """Alternate assign and update until the largest squared centroid move is within ``tol``."""
    if init.k < 1:
        raise ContractError("lloyd needs at least one initial centroid")
    if max_iter < 1:
        raise ContractError(f"max_iter must be at least 1, got {max_iter}")
    if tol < 0:
        raise ContractError(f"tol must be nonnegative, got {tol}")
    cfg = cfg or ExecConfig.from_settings()

    centroids = init.copy()
    history: list[float] = []
    converged = False
    iterations = 0
    with WorkerPool(cfg.workers) as pool:
        points = prepare_points(data, cfg.strategy)
        for iterations in range(1, max_iter + 1):
            current = assign(data, centroids, cfg, pool=pool, points=points)
            history.append(current.cost)
            updated = update_centroids(
                data,
                current.labels,
                centroids.k,
                distances=current.distances,
                block_size=cfg.block_size,
                pool=pool,
            )
            shift = float(np.max(np.sum((updated.coords - centroids.coords) ** 2, axis=1)))
            centroids = updated
            logger.debug("Lloyd iteration %d: cost %.6g, max shift² %.3g", iterations, current.cost, shift)
            if shift <= tol:
                converged = True
                break
        final = assign(data, centroids, cfg, pool=pool, points=points)

    if final.cost != history[-1]:
        history.append(final.cost)
    logger.info("Lloyd finished after %d iterations (converged=%s, cost=%.6g)", iterations, converged, final.cost)
    return ClusteringResult(
        labels=final.labels,
        centroids=centroids,
        cost=final.cost,
        iterations=iterations,
        converged=converged,
        cost_history=history,
    )


def kmeans(
    data: Dataset,
    k: int,
    cfg: ExecConfig,
    *,
    init: InitMethod = InitMethod.KMEANS_PP,
    mode: SeedingMode = SeedingMode.PARALLEL,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    rng: RngStream | None = None,
) -> tuple[SeedingResult, ClusteringResult]:
    """Seeding followed by Lloyd iterations."""
    rng = rng or RngStream(cfg.rng_seed)
    if init is InitMethod.RANDOM:
        seeding = seed_uniform(data, k, rng)
    else:
        seeding = seed(data, k, rng, cfg, mode)
    return seeding, lloyd(data, seeding.centers, max_iter, tol, cfg)
