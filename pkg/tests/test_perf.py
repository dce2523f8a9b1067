"""Wall-clock speedup of parallel seeding over the serial baseline.

Deselected by default; run with ``pytest -m perf`` on a machine with at least four physical cores.
"""

import psutil
import pytest

from app.models.enums import LayoutStrategy, Phase, SweepAxis
from app.schemas.bench import ScenarioSpec
from app.services.bench import run_scenario, summarize

PHYSICAL_CORES = psutil.cpu_count(logical=False) or 1

pytestmark = [
    pytest.mark.perf,
    pytest.mark.slow,
    pytest.mark.skipif(PHYSICAL_CORES < 4, reason="needs at least 4 physical cores"),
]


def test_parallel_seeding_speedup_on_a_million_points():
    spec = ScenarioSpec(
        scenario="points",
        sweep=SweepAxis.POINTS,
        fixed=50,
        values=[1_000_000],
        strategies=list(LayoutStrategy),
        workers=[1, PHYSICAL_CORES],
        trials=3,
        rng_seed=1,
    )
    summary = summarize(run_scenario(spec))
    parallel = [
        row for row in summary.rows if row.phase is Phase.SEEDING and row.workers == PHYSICAL_CORES
    ]
    best = max(row.speedup for row in parallel)
    assert best >= 2.0, f"best parallel speedup {best:.2f}x"
