#!/usr/bin/env python3
"""
Desk-Scale Sweep Runner
Checks the machine, then runs the clusters and points sweeps and writes their reports
"""

import argparse
import logging
import sys
from datetime import datetime
from pathlib import Path

import psutil

from app.core.config import settings
from app.models.enums import LayoutStrategy, SweepAxis
from app.services.bench import (
    WORKING_SET_FACTOR,
    preset,
    run_scenario,
    summarize,
    write_report_csv,
    write_summary_csv,
)


class MachineCheck:
    def __init__(self) -> None:
        self.issues: list[str] = []
        self.warnings: list[str] = []
        self.info: list[str] = []

    def add_issue(self, message: str) -> None:
        self.issues.append(f"❌ {message}")

    def add_warning(self, message: str) -> None:
        self.warnings.append(f"⚠️  {message}")

    def add_info(self, message: str) -> None:
        self.info.append(f"ℹ️  {message}")

    def check_cores(self) -> int:
        physical = psutil.cpu_count(logical=False) or 1
        logical = psutil.cpu_count(logical=True) or 1
        self.add_info(f"Cores: {physical} physical, {logical} logical")
        if physical < 4:
            self.add_warning("Fewer than 4 physical cores; parallel speedups will be small")
        return logical

    def check_memory(self, scale_divisor: int) -> None:
        memory = psutil.virtual_memory()
        largest_n = max(max(n for n, _ in preset(sweep, scale_divisor).cells()) for sweep in SweepAxis)
        largest = largest_n * 2 * 8 * WORKING_SET_FACTOR
        self.add_info(f"Memory: {memory.available / 1024**3:.1f} GiB available of {memory.total / 1024**3:.1f} GiB")
        if largest > memory.available * settings.memory_headroom:
            self.add_issue(f"Largest sweep cell needs ~{largest / 1024**3:.2f} GiB; lower the scale")
        elif memory.percent > 80:
            self.add_warning(f"Memory already {memory.percent:.0f}% used; timings may be noisy")

    def check_load(self) -> None:
        load = psutil.cpu_percent(interval=1)
        if load > 25:
            self.add_warning(f"CPU is {load:.0f}% busy; close other work for clean timings")
        else:
            self.add_info(f"CPU load: {load:.0f}%")

    def report(self) -> None:
        for line in self.info + self.warnings + self.issues:
            print(line)


def main() -> int:
    parser = argparse.ArgumentParser(description="Run both desk-scale sweeps")
    parser.add_argument("--out-dir", type=Path, default=Path("bench-results"))
    parser.add_argument("--scale-divisor", type=int, default=settings.bench_scale_divisor)
    parser.add_argument("--trials", type=int, default=settings.bench_trials)
    parser.add_argument("--lloyd", action="store_true", help="Also time Lloyd clustering")
    parser.add_argument("--force", action="store_true", help="Run even when the checks report issues")
    args = parser.parse_args()

    logging.basicConfig(level=settings.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    checker = MachineCheck()
    logical = checker.check_cores()
    checker.check_memory(args.scale_divisor)
    checker.check_load()
    checker.report()
    if checker.issues and not args.force:
        return 1

    args.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    workers = sorted({1, logical})
    for sweep in SweepAxis:
        spec = preset(
            sweep,
            args.scale_divisor,
            strategies=list(LayoutStrategy),
            workers=workers,
            trials=args.trials,
            lloyd=args.lloyd,
        )
        report = run_scenario(spec)
        report_path = args.out_dir / f"{sweep.value}_{stamp}.csv"
        write_report_csv(report, report_path)
        summary = summarize(report)
        write_summary_csv(summary, args.out_dir / f"{sweep.value}_{stamp}_summary.csv")
        print(f"✅ {sweep.value} sweep: {len(report.rows)} rows -> {report_path}")
        for row in summary.crossover:
            print(f"   crossover at k={row.k} n={row.n_points}: {row.strategy.value} w={row.workers}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
