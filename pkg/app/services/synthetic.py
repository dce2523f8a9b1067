"""Synthetic Gaussian blob datasets for tests and benchmarks."""

import numpy as np

from app.core.dataset import Dataset
from app.core.errors import ContractError
from app.core.rng import RngStream

CENTER_BOX = 100.0


def blob_centers(blobs: int, dims: int, rng: RngStream) -> np.ndarray:
    return rng.uniform_array((blobs, dims), 0.0, CENTER_BOX)


def data_stream(seed: int) -> RngStream:
    """Generator stream for a seed, kept apart from the stream seeding draws from."""
    return RngStream(seed).spawn(1)[0]


def generator_labels(n: int, blobs: int) -> np.ndarray:
    """Blob of every generated point (round-robin assignment)."""
    return np.arange(n, dtype=np.int64) % blobs


def generate_points(
    n: int,
    dims: int,
    blobs: int,
    spread: float,
    rng: RngStream,
    *,
    centers: np.ndarray | None = None,
) -> Dataset:
    """``n`` points dealt round-robin to ``blobs`` isotropic Gaussian blobs.

    Blob centers are drawn uniformly in [0, 100)^dims unless given explicitly; each point is
    its blob center plus N(0, spread²) noise per coordinate.
    """
    if not n >= blobs >= 1:
        raise ContractError(f"Need n >= blobs >= 1, got n={n}, blobs={blobs}")
    if dims < 1:
        raise ContractError(f"dims must be positive, got {dims}")
    if spread < 0:
        raise ContractError(f"spread must be nonnegative, got {spread}")
    if centers is None:
        centers = blob_centers(blobs, dims, rng)
    else:
        centers = np.asarray(centers, dtype=np.float64)
        if centers.shape != (blobs, dims):
            raise ContractError(f"Blob centers need shape ({blobs}, {dims}), got {centers.shape}")
    points = centers[generator_labels(n, blobs)]
    if spread > 0:
        points = points + rng.normal_array((n, dims), spread)
    return Dataset(points)


def parse_generator(spec: str) -> dict[str, float]:
    """Parse ``n=<N>,blobs=<B>,spread=<S>[,dims=<D>]`` as used on the command line."""
    fields: dict[str, float] = {}
    for part in spec.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in {"n", "blobs", "spread", "dims"}:
            raise ContractError(f"Bad generator field '{part}'; expected n=,blobs=,spread=[,dims=]")
        try:
            fields[key] = float(value)
        except ValueError as exc:
            raise ContractError(f"Generator field {key} is not a number: '{value}'") from exc
    if "n" not in fields:
        raise ContractError("Generator spec needs n=<N>")
    return fields
