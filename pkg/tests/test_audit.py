"""Tests for the cross-strategy seeding audit."""

import importlib
import inspect

import numpy as np
import pytest

from app.core.dataset import Dataset
from app.core.errors import ContractError
from app.models.enums import LayoutStrategy
from app.services.audit import AUDIT_MAX_POINTS, strategy_equivalence_audit

pytestmark = pytest.mark.unit


@pytest.fixture
def small_data() -> Dataset:
    return Dataset(np.random.default_rng(0).uniform(0, 100, size=(1_000, 2)))


def test_audit_passes_on_example(small_data):
    report = strategy_equivalence_audit(small_data, 10, 42, workers=4)
    assert report.passed
    assert report.mismatches == []
    assert set(report.indices) == set(LayoutStrategy)
    assert len(report.indices[LayoutStrategy.READ_ONLY_ARENA]) == 10


def test_audit_single_point():
    report = strategy_equivalence_audit(Dataset([[1.0, 2.0]]), 1, 0)
    assert report.passed
    assert all(chosen == [0] for chosen in report.indices.values())


def test_audit_on_random_triples():
    gen = np.random.default_rng(55)
    for _ in range(50):
        n = int(gen.integers(1, 3_000))
        k = int(gen.integers(1, min(20, n) + 1))
        data = Dataset(gen.uniform(0, 100, size=(n, 2)))
        report = strategy_equivalence_audit(data, k, int(gen.integers(0, 2**63)), workers=3, chunk_size=128)
        assert report.passed, report.mismatches


def test_audit_refuses_large_instances():
    data = Dataset(np.zeros((AUDIT_MAX_POINTS + 1, 2)))
    with pytest.raises(ContractError):
        strategy_equivalence_audit(data, 2, 0)


def test_layout_does_not_reach_back_into_seeding():
    layout = importlib.import_module("app.services.layout")
    assert not hasattr(layout, "strategy_equivalence_audit")
    assert "app.services.seeding" not in inspect.getsource(layout)
