"""Tests for point storage, the metric, chunk planning and random streams."""

import numpy as np
import pytest

from app.core.chunks import ChunkRange, num_chunks, plan_chunks, span, stripe
from app.core.dataset import (
    SYNTHETIC_INDEX,
    CentroidSet,
    Dataset,
    PointFileError,
    load_points,
    save_points,
    squared_distance,
    squared_distance_columns,
)
from app.core.errors import ContractError
from app.core.rng import RngStream
from app.core.summation import block_partials, block_prefix, combine, fixed_tree_sum

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [
        ((0.0, 0.0), (3.0, 4.0), 25.0),
        ((7.5, -2.0), (7.5, -2.0), 0.0),
        ((1.0, 2.0, 3.0), (4.0, 6.0, 3.0), 25.0),
    ],
)
def test_squared_distance_examples(a, b, expected):
    assert squared_distance(a, b) == expected


def test_squared_distance_rejects_dimension_mismatch():
    with pytest.raises(ContractError):
        squared_distance((0.0, 0.0), (1.0, 2.0, 3.0))


def test_squared_distance_symmetric_and_zero_on_identity():
    gen = np.random.default_rng(5)
    for _ in range(200):
        a, b = gen.normal(size=(2, 3))
        assert squared_distance(a, b) == squared_distance(b, a) >= 0.0
        assert squared_distance(a, a) == 0.0


def test_column_kernel_matches_scalar_metric_bitwise():
    gen = np.random.default_rng(9)
    points = gen.uniform(-50, 50, size=(300, 3))
    center = gen.uniform(-50, 50, size=3)
    batched = squared_distance_columns([points[:, j] for j in range(3)], center)
    scalar = np.array([squared_distance(p, center) for p in points])
    assert np.array_equal(batched, scalar)


@pytest.mark.parametrize(
    ("n", "chunk", "expected"),
    [
        (4000, 1024, [(0, 1024), (1024, 2048), (2048, 3072), (3072, 4000)]),
        (1024, 1024, [(0, 1024)]),
        (10, 3, [(0, 3), (3, 6), (6, 9), (9, 10)]),
    ],
)
def test_plan_chunks_examples(n, chunk, expected):
    assert [(c.start, c.stop) for c in plan_chunks(n, chunk)] == expected
    assert num_chunks(n, chunk) == len(expected)


def test_plan_chunks_partitions_random_ranges():
    gen = np.random.default_rng(11)
    for _ in range(300):
        n = int(gen.integers(1, 5000))
        chunk = int(gen.integers(1, 700))
        chunks = plan_chunks(n, chunk)
        assert chunks[0].start == 0 and chunks[-1].stop == n
        assert all(a.stop == b.start for a, b in zip(chunks, chunks[1:]))
        assert all(c.size == chunk for c in chunks[:-1])
        assert 1 <= chunks[-1].size <= chunk
        assert len(chunks) == -(-n // chunk)


@pytest.mark.parametrize(("n", "chunk"), [(0, 4), (5, 0)])
def test_plan_chunks_rejects_bad_arguments(n, chunk):
    with pytest.raises(ContractError):
        plan_chunks(n, chunk)


def test_stripe_is_contiguous_and_drops_empty_stripes():
    chunks = plan_chunks(10, 3)
    stripes = stripe(chunks, 8)
    assert len(stripes) == 4
    assert [c for run in stripes for c in run] == chunks
    stripes = stripe(plan_chunks(100, 10), 3)
    assert [len(run) for run in stripes] == [4, 3, 3]
    assert span(stripes[1]) == ChunkRange(40, 70)


def test_dataset_is_copied_and_read_only():
    raw = np.array([[1.0, 2.0], [3.0, 4.0]])
    data = Dataset(raw)
    raw[0, 0] = 99.0
    assert data.points[0, 0] == 1.0
    assert (data.n, data.dims, len(data)) == (2, 2, 2)
    with pytest.raises(ValueError):
        data.points[0, 0] = 5.0


@pytest.mark.parametrize("bad", [np.zeros((0, 2)), np.zeros(3), [[1.0, np.nan]], [[np.inf, 0.0]]])
def test_dataset_rejects_bad_storage(bad):
    with pytest.raises(ContractError):
        Dataset(bad)


def test_dataset_from_flat_checks_length():
    assert Dataset.from_flat([0, 1, 2, 3, 4, 5], dims=3).n == 2
    with pytest.raises(ContractError):
        Dataset.from_flat([0, 1, 2], dims=2)


def test_centroid_set_grows_in_place():
    data = Dataset([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    centers = CentroidSet.with_capacity(2, 2)
    assert centers.k == 0
    centers.add(data, 2)
    centers.add(data, 0)
    assert centers.indices.tolist() == [2, 0]
    assert np.array_equal(centers.coords, data.points[[2, 0]])
    with pytest.raises(ContractError):
        centers.add(data, 1)
    assert CentroidSet(np.zeros((2, 2))).indices.tolist() == [SYNTHETIC_INDEX] * 2


def test_rng_streams_are_reproducible():
    a, b = RngStream(123), RngStream(123)
    first = [a.uniform() for _ in range(1000)]
    assert first == [b.uniform() for _ in range(1000)]
    assert first[0] != first[1]
    assert all(0.0 <= u < 1.0 for u in first)
    assert a.draws == 1000


def test_rng_uniform_mean():
    stream = RngStream(77)
    values = stream.uniform_array((1_000_000,))
    assert abs(values.mean() - 0.5) < 0.005


def test_rng_spawn_children_are_distinct_and_leave_parent_untouched():
    parent = RngStream(3)
    reference = RngStream(3).uniform()
    children = parent.spawn(2)
    draws = [child.uniform() for child in children]
    assert draws[0] != draws[1]
    assert parent.uniform() == reference


def test_rng_rejects_out_of_range_seed():
    with pytest.raises(ContractError):
        RngStream(-1)
    with pytest.raises(ContractError):
        RngStream(2**64)


def test_fixed_tree_shape():
    values = np.arange(10, dtype=np.float64)
    partials = block_partials(values, 4)
    assert partials.tolist() == [6.0, 22.0, 17.0]
    cumulative, total = combine(partials)
    assert cumulative.tolist() == [6.0, 28.0, 45.0]
    assert total == fixed_tree_sum(values, 4) == 45.0
    assert block_prefix(values, cumulative, 1, 4).tolist() == [10.0, 15.0, 21.0, 28.0]
    assert fixed_tree_sum([]) == 0.0


def test_point_files_round_trip(tmp_path):
    data = Dataset(np.random.default_rng(1).normal(size=(20, 3)))
    for name in ("points.csv", "points.bin"):
        save_points(tmp_path / name, data)
        assert np.array_equal(load_points(tmp_path / name).points, data.points)


def test_binary_point_file_layout(tmp_path):
    path = tmp_path / "two.raw"
    header = np.array([2, 2], dtype="<u8").tobytes()
    path.write_bytes(header + np.array([0.0, 1.0, 2.0, 3.0], dtype="<f8").tobytes())
    assert load_points(path).points.tolist() == [[0.0, 1.0], [2.0, 3.0]]
    path.write_bytes(header + b"\x00" * 8)
    with pytest.raises(PointFileError):
        load_points(path)


def test_missing_or_malformed_point_file(tmp_path):
    with pytest.raises(PointFileError):
        load_points(tmp_path / "absent.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\nthree,4\n")
    with pytest.raises(PointFileError):
        load_points(bad)
