"""
Test configuration and fixtures for the k-means++ library.
"""

import numpy as np
import pytest

from app.core.dataset import Dataset
from app.core.rng import RngStream
from app.models.enums import LayoutStrategy
from app.schemas.exec import ExecConfig
from app.services.synthetic import generate_points


@pytest.fixture
def line_points() -> Dataset:
    """Four collinear points with squared gaps {1, 4, 100} from the origin."""
    return Dataset([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [10.0, 0.0]])


@pytest.fixture
def three_points() -> Dataset:
    return Dataset([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])


@pytest.fixture
def random_points() -> Dataset:
    rng = np.random.default_rng(1234)
    return Dataset(rng.uniform(0.0, 100.0, size=(2500, 2)))


@pytest.fixture
def well_separated_blobs() -> tuple[Dataset, np.ndarray]:
    """Three tight blobs (spread 0.1) with centers at least 10 apart, plus generator labels."""
    centers = np.array([[10.0, 10.0], [40.0, 60.0], [80.0, 20.0]])
    data = generate_points(3000, 2, 3, 0.1, RngStream(7), centers=centers)
    return data, np.arange(3000) % 3


@pytest.fixture
def rng() -> RngStream:
    return RngStream(2024)


@pytest.fixture(params=list(LayoutStrategy), ids=lambda s: s.value)
def strategy(request) -> LayoutStrategy:
    return request.param


@pytest.fixture
def parallel_cfg() -> ExecConfig:
    return ExecConfig(chunk_size=256, workers=4, strategy=LayoutStrategy.SHARED_MUTABLE, rng_seed=2024)


def pytest_configure(config):
    """Configure custom markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as taking more than a few seconds")
    config.addinivalue_line("markers", "perf: mark test as a wall-clock speedup check")
