"""Benchmark scenarios: the points and clusters sweeps, timing reports and summaries."""

import csv
import logging
import platform
import sys
import time
from collections import defaultdict
from collections.abc import Callable
from datetime import datetime, timezone
from pathlib import Path
from statistics import fmean

import numpy as np
import psutil

from app.core.config import settings
from app.core.errors import KMeansError
from app.core.rng import RngStream
from app.models.enums import LayoutStrategy, Phase, SweepAxis
from app.schemas.bench import (
    REPORT_FIELDS,
    BenchSummary,
    EnvironmentInfo,
    ScenarioSpec,
    SummaryRow,
    TimingReport,
    TimingRow,
)
from app.schemas.exec import ExecConfig
from app.services.cluster import lloyd
from app.services.reduce import ReductionPlan
from app.services.seeding import seed_parallel, seed_serial
from app.services.synthetic import data_stream, generate_points

logger = logging.getLogger(__name__)

FULL_SCALE_POINTS = 4_000_000
FULL_SCALE_CLUSTERS = 50
CLUSTER_VALUES = (2, 5, 10, 25, 30, 50, 75, 100)
POINT_MULTIPLES = tuple(range(1, 11))

# dataset, distance table, one arena copy and kernel temporaries
WORKING_SET_FACTOR = 4


class ResourceError(KMeansError):
    pass


class SummaryError(KMeansError):
    pass


def environment_info() -> EnvironmentInfo:
    memory = psutil.virtual_memory()
    return EnvironmentInfo(
        logical_cores=psutil.cpu_count(logical=True) or 1,
        physical_cores=psutil.cpu_count(logical=False),
        total_memory_bytes=memory.total,
        platform=platform.platform(),
        python_version=sys.version.split()[0],
        numpy_version=np.__version__,
        timestamp=datetime.now(timezone.utc),
    )


def check_memory(n_points: int, dims: int, headroom: float | None = None) -> None:
    headroom = settings.memory_headroom if headroom is None else headroom
    needed = n_points * dims * 8 * WORKING_SET_FACTOR
    available = psutil.virtual_memory().available
    if needed > available * headroom:
        raise ResourceError(
            f"n={n_points}, dims={dims} needs ~{needed / 1024**3:.2f} GiB, "
            f"only {available * headroom / 1024**3:.2f} GiB usable"
        )


def preset(sweep: SweepAxis, scale_divisor: int | None = None, **overrides) -> ScenarioSpec:
    """One of the two published sweeps, divided down to desk scale (divisor 1 = full scale)."""
    divisor = scale_divisor or settings.bench_scale_divisor
    if sweep is SweepAxis.CLUSTERS:
        values = {
            "scenario": "clusters",
            "fixed": FULL_SCALE_POINTS // divisor,
            "values": list(CLUSTER_VALUES),
        }
    else:
        values = {
            "scenario": "points",
            "fixed": FULL_SCALE_CLUSTERS,
            "values": [1_000_000 * m // divisor for m in POINT_MULTIPLES],
        }
    values.update({key: value for key, value in overrides.items() if value is not None})
    return ScenarioSpec(sweep=sweep, **values)


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def run_scenario(
    spec: ScenarioSpec,
    *,
    on_row: Callable[[TimingRow], None] | None = None,
) -> TimingReport:
    """Time every (axis value × strategy × workers) cell, strictly one after another.

    Every cell's dataset is checked against available memory before the first timing starts.

    The workers=1 SharedMutable cell runs the serial seeding path as the baseline; every other
    cell runs the parallel path. Seeding time covers pool start-up and view construction.
    """
    cells = spec.cells()
    for n_points, _ in cells:
        check_memory(n_points, spec.dims)
    report = TimingReport(environment=environment_info())
    for n_points, k in cells:
        blobs = min(spec.blobs, n_points)
        data = generate_points(n_points, spec.dims, blobs, spec.spread, data_stream(spec.rng_seed))
        logger.info("Cell n=%d k=%d: dataset ready", n_points, k)
        for strategy in spec.strategies:
            for workers in spec.workers:
                cfg = ExecConfig(
                    chunk_size=spec.chunk_size,
                    workers=workers,
                    strategy=strategy,
                    rng_seed=spec.rng_seed,
                    block_size=settings.reduction_block_size,
                )
                baseline = workers == 1 and strategy is LayoutStrategy.SHARED_MUTABLE
                for trial in range(spec.trials):
                    rng = RngStream(spec.rng_seed)
                    start = time.perf_counter()
                    if baseline:
                        seeding = seed_serial(data, k, rng, plan=ReductionPlan(cfg.block_size))
                    else:
                        seeding = seed_parallel(data, k, rng, cfg)
                    timings = {Phase.SEEDING: _elapsed_ms(start)}
                    if spec.lloyd:
                        start = time.perf_counter()
                        lloyd(data, seeding.centers, spec.max_iter, spec.tol, cfg)
                        timings[Phase.CLUSTERING] = _elapsed_ms(start)
                    timings[Phase.TOTAL] = sum(timings.values())
                    for phase, wall_ms in timings.items():
                        row = TimingRow(
                            scenario=spec.scenario,
                            n_points=n_points,
                            k=k,
                            strategy=strategy,
                            workers=workers,
                            chunk_size=spec.chunk_size,
                            phase=phase,
                            trial=trial,
                            wall_ms=wall_ms,
                        )
                        report.rows.append(row)
                        if on_row is not None:
                            on_row(row)
                logger.info(
                    "Cell n=%d k=%d strategy=%s workers=%d done", n_points, k, strategy.value, workers
                )
    return report


def summarize(report: TimingReport) -> BenchSummary:
    """Mean/min per cell, speedup over the serial baseline and deltas against SharedMutable."""
    groups: dict[tuple, list[float]] = defaultdict(list)
    for row in report.rows:
        groups[row.cell()].append(row.wall_ms)
    means = {cell: fmean(values) for cell, values in groups.items()}

    rows: list[SummaryRow] = []
    for cell, values in groups.items():
        scenario, n_points, k, strategy, workers, chunk_size, phase = cell
        baseline_cell = (scenario, n_points, k, LayoutStrategy.SHARED_MUTABLE, 1, chunk_size, phase)
        if baseline_cell not in means:
            raise SummaryError(
                f"No workers=1 shared baseline for scenario={scenario} n={n_points} k={k} "
                f"chunk_size={chunk_size} phase={phase.value}"
            )
        mean = means[cell]
        speedup = means[baseline_cell] / mean if mean > 0 else float("inf")
        global_cell = (scenario, n_points, k, LayoutStrategy.SHARED_MUTABLE, workers, chunk_size, phase)
        delta = None
        if global_cell in means and means[global_cell] > 0:
            delta = (means[global_cell] - mean) / means[global_cell] * 100.0
        rows.append(
            SummaryRow(
                scenario=scenario,
                n_points=n_points,
                k=k,
                strategy=strategy,
                workers=workers,
                chunk_size=chunk_size,
                phase=phase,
                trials=len(values),
                mean_ms=mean,
                min_ms=min(values),
                speedup=speedup,
                strategy_delta_pct=delta,
            )
        )
    crossover = [
        row
        for row in rows
        if row.phase is Phase.SEEDING
        and (row.workers, row.strategy) != (1, LayoutStrategy.SHARED_MUTABLE)
        and row.speedup < 1.0
    ]
    return BenchSummary(rows=rows, crossover=crossover)


def environment_path(path: Path) -> Path:
    return path.with_name(path.name + ".env.json")


def write_report_csv(report: TimingReport, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=REPORT_FIELDS)
        writer.writeheader()
        for row in report.rows:
            writer.writerow(row.model_dump(mode="json"))
    environment_path(path).write_text(report.environment.model_dump_json(indent=2), encoding="utf-8")


def read_report_csv(path: str | Path) -> TimingReport:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != REPORT_FIELDS:
            raise SummaryError(f"{path} does not carry the timing report header")
        rows = [TimingRow.model_validate(record) for record in reader]
    sidecar = environment_path(path)
    if sidecar.exists():
        environment = EnvironmentInfo.model_validate_json(sidecar.read_text(encoding="utf-8"))
    else:
        environment = EnvironmentInfo(
            logical_cores=0,
            timestamp=datetime.fromtimestamp(path.stat().st_mtime, tz=timezone.utc),
        )
    return TimingReport(environment=environment, rows=rows)


def write_summary_csv(summary: BenchSummary, path: str | Path) -> None:
    path = Path(path)
    fields = list(SummaryRow.model_fields)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        for row in summary.rows:
            writer.writerow(row.model_dump(mode="json"))
