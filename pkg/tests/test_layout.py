"""Tests for the data placement strategies."""

import numpy as np
import pytest

from app.core.dataset import CentroidSet, Dataset
from app.core.errors import ContractError
from app.core.rng import RngStream
from app.models.enums import LayoutStrategy
from app.schemas.exec import ExecConfig
from app.services.layout import (
    CapacityError,
    ReadOnlyArena,
    RowMajorPoints,
    build_views,
    ensure_replicated_budget,
    prepare_points,
)
from app.services.seeding import seed_parallel

pytestmark = pytest.mark.unit


@pytest.fixture
def small_data() -> Dataset:
    return Dataset(np.random.default_rng(0).uniform(0, 100, size=(1_000, 2)))


def test_shared_views_hand_out_one_handle(small_data):
    centers = CentroidSet.from_indices(small_data, [3, 30])
    views = build_views(small_data, centers, LayoutStrategy.SHARED_MUTABLE, 4)
    assert views.workers == 4
    assert isinstance(views.points, RowMajorPoints)
    assert all(views.centroids_for(w) is views.centroids_for(0) for w in range(4))
    assert views.placement["centroids_shared"] is True
    assert views.placement["replicated_bytes_per_worker"] == 0
    assert np.array_equal(views.newest_center(2), small_data.point(30))


def test_replicated_views_are_private_read_only_copies(small_data):
    centers = CentroidSet.from_indices(small_data, list(range(50)))
    views = build_views(small_data, centers, LayoutStrategy.REPLICATED_CENTROIDS, 3)
    copies = [views.centroids_for(w) for w in range(3)]
    assert len({id(c) for c in copies}) == 3
    assert all(not np.shares_memory(c, centers.coords) for c in copies)
    assert all(not c.flags.writeable for c in copies)
    assert views.placement["replicated_bytes_per_worker"] == 800


def test_arena_is_sealed_column_major(small_data):
    points = prepare_points(small_data, LayoutStrategy.READ_ONLY_ARENA)
    assert isinstance(points, ReadOnlyArena)
    assert points.nbytes == small_data.nbytes
    columns = points.columns(10, 20)
    assert np.array_equal(columns[1], small_data.points[10:20, 1])
    with pytest.raises(ValueError):
        columns[0][0] = 1.0
    views = build_views(small_data, CentroidSet.from_indices(small_data, [0]), LayoutStrategy.READ_ONLY_ARENA, 2)
    assert isinstance(views.points, ReadOnlyArena)


def test_points_are_never_copied_per_worker(small_data, strategy):
    points = prepare_points(small_data, strategy)
    views = build_views(small_data, CentroidSet.from_indices(small_data, [1]), strategy, 8, points=points)
    assert views.points is points
    assert views.placement["points_shared"] is True


def test_replicated_budget_boundary():
    ensure_replicated_budget(4096, 2)
    with pytest.raises(CapacityError, match="64 KiB"):
        ensure_replicated_budget(4097, 2)


def test_replicated_seeding_capacity_boundary():
    data = Dataset(np.random.default_rng(1).uniform(0, 100, size=(4_097, 2)))
    cfg = ExecConfig(chunk_size=1024, workers=2, strategy=LayoutStrategy.REPLICATED_CENTROIDS)
    with pytest.raises(CapacityError):
        seed_parallel(data, 4_097, RngStream(0), cfg)
    result = seed_parallel(data, 4_096, RngStream(0), cfg)
    assert len(set(result.indices.tolist())) == 4_096


def test_build_views_rejects_bad_requests(small_data):
    with pytest.raises(ContractError):
        build_views(small_data, CentroidSet.with_capacity(1, 2), LayoutStrategy.SHARED_MUTABLE, 2)
    with pytest.raises(ContractError):
        build_views(small_data, CentroidSet.from_indices(small_data, [0]), LayoutStrategy.SHARED_MUTABLE, 0)
    with pytest.raises(ContractError):
        build_views(small_data, CentroidSet([[0.0, 0.0, 0.0]]), LayoutStrategy.SHARED_MUTABLE, 1)
