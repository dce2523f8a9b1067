"""Point storage, the squared Euclidean metric and point file formats."""

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from app.core.errors import ContractError, KMeansError

SYNTHETIC_INDEX = -1
BINARY_SUFFIXES = {".bin", ".raw"}


class PointFileError(KMeansError):
    pass


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable row-major store of ``n`` points in ``dims`` dimensions.

    The backing array is copied on construction and flagged read-only, so any number of
    workers may read it without synchronization.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64, order="C", copy=True)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ContractError(f"Dataset needs a non-empty (n, dims) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ContractError("Dataset coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_flat(cls, values: Sequence[float] | np.ndarray, dims: int = 2) -> "Dataset":
        flat = np.asarray(values, dtype=np.float64).ravel()
        if dims < 1 or flat.size == 0 or flat.size % dims:
            raise ContractError(f"Storage length {flat.size} is not a positive multiple of dims={dims}")
        return cls(flat.reshape(-1, dims))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def dims(self) -> int:
        return int(self.points.shape[1])

    @property
    def nbytes(self) -> int:
        return int(self.points.nbytes)

    def point(self, index: int) -> np.ndarray:
        return self.points[index]

    def __len__(self) -> int:
        return self.n


class CentroidSet:
    """Chosen centers plus the dataset index each one came from.

    During seeding the set grows in place inside a preallocated buffer; ``coords`` and
    ``indices`` always expose only the first ``k`` rows. Centroids produced by a Lloyd update
    carry ``SYNTHETIC_INDEX`` instead of a source index.
    """

    def __init__(self, coords: np.ndarray, indices: np.ndarray | Sequence[int] | None = None) -> None:
        coords = np.array(coords, dtype=np.float64, ndmin=2, copy=True)
        if coords.ndim != 2:
            raise ContractError(f"Centroid coordinates need shape (k, dims), got {coords.shape}")
        if indices is None:
            indices = np.full(coords.shape[0], SYNTHETIC_INDEX, dtype=np.int64)
        indices = np.array(indices, dtype=np.int64, copy=True)
        if indices.shape != (coords.shape[0],):
            raise ContractError("Centroid indices must have one entry per centroid")
        self._coords = coords
        self._indices = indices
        self._k = coords.shape[0]

    @classmethod
    def with_capacity(cls, capacity: int, dims: int) -> "CentroidSet":
        centers = cls(np.empty((capacity, dims)), np.full(capacity, SYNTHETIC_INDEX))
        centers._k = 0
        return centers

    @classmethod
    def from_indices(cls, data: Dataset, indices: Sequence[int] | np.ndarray) -> "CentroidSet":
        idx = np.asarray(indices, dtype=np.int64)
        return cls(data.points[idx], idx)

    def add(self, data: Dataset, index: int) -> None:
        if self._k >= self._coords.shape[0]:
            raise ContractError(f"CentroidSet is full ({self._k} centers)")
        if data.dims != self.dims:
            raise ContractError(f"Point has {data.dims} dims, centroids have {self.dims}")
        self._coords[self._k] = data.points[index]
        self._indices[self._k] = index
        self._k += 1

    @property
    def k(self) -> int:
        return self._k

    @property
    def dims(self) -> int:
        return int(self._coords.shape[1])

    @property
    def coords(self) -> np.ndarray:
        return self._coords[: self._k]

    @property
    def indices(self) -> np.ndarray:
        return self._indices[: self._k]

    @property
    def nbytes(self) -> int:
        return self._k * self.dims * 8

    def copy(self) -> "CentroidSet":
        return CentroidSet(self.coords, self.indices)

    def __len__(self) -> int:
        return self._k

    def __repr__(self) -> str:
        return f"CentroidSet(k={self._k}, dims={self.dims}, indices={self.indices.tolist()})"


def squared_distance(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ContractError(f"Dimension mismatch: {a.shape} vs {b.shape}")
    acc = 0.0
    for a_j, b_j in zip(a.tolist(), b.tolist(), strict=True):
        diff = a_j - b_j
        acc += diff * diff
    return acc


def squared_distance_columns(
    columns: Sequence[np.ndarray],
    center: np.ndarray,
    out: np.ndarray | None = None,
    scratch: np.ndarray | None = None,
) -> np.ndarray:
    """Squared distance of every point to ``center``, one coordinate column at a time.

    The accumulation order matches :func:`squared_distance`, so results are bit-identical to
    the scalar metric however the columns are sliced.
    """
    if len(columns) != center.shape[0]:
        raise ContractError(f"Dimension mismatch: {len(columns)} columns vs center of {center.shape[0]}")
    size = columns[0].shape[0]
    if out is None:
        out = np.empty(size, dtype=np.float64)
    if scratch is None:
        scratch = np.empty(size, dtype=np.float64)
    np.subtract(columns[0], center[0], out=out)
    np.multiply(out, out, out=out)
    for column, coord in zip(columns[1:], center[1:].tolist(), strict=True):
        np.subtract(column, coord, out=scratch)
        np.multiply(scratch, scratch, out=scratch)
        np.add(out, scratch, out=out)
    return out


def load_points(path: str | Path) -> Dataset:
    """Read a CSV (one point per line) or raw little-endian binary point file."""
    path = Path(path)
    if not path.exists():
        raise PointFileError(f"Point file not found: {path}")
    try:
        if path.suffix.lower() in BINARY_SUFFIXES:
            return _load_binary(path)
        values = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except (OSError, ValueError) as exc:
        raise PointFileError(f"Cannot parse point file {path}: {exc}") from exc
    return Dataset(values)


def _load_binary(path: Path) -> Dataset:
    raw = path.read_bytes()
    if len(raw) < 16:
        raise PointFileError(f"Binary point file {path} is shorter than its header")
    n, dims = (int(v) for v in np.frombuffer(raw, dtype="<u8", count=2))
    expected = 16 + n * dims * 8
    if len(raw) != expected:
        raise PointFileError(f"Binary point file {path} holds {len(raw)} bytes, header implies {expected}")
    values = np.frombuffer(raw, dtype="<f8", offset=16, count=n * dims)
    return Dataset(values.reshape(n, dims))


def save_points(path: str | Path, points: Dataset | np.ndarray) -> None:
    path = Path(path)
    values = points.points if isinstance(points, Dataset) else np.asarray(points, dtype=np.float64)
    values = np.atleast_2d(values)
    if path.suffix.lower() in BINARY_SUFFIXES:
        header = np.array(values.shape, dtype="<u8")
        path.write_bytes(header.tobytes() + values.astype("<f8").tobytes())
        return
    np.savetxt(path, values, delimiter=",", fmt="%.17g")
