import argparse
import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from app.core.config import settings
from app.core.dataset import Dataset, PointFileError, load_points, save_points
from app.core.errors import ContractError, InvalidRequestError
from app.core.rng import RngStream
from app.models.enums import InitMethod, LayoutStrategy, SeedingMode, SweepAxis
from app.schemas.bench import ScenarioSpec
from app.schemas.exec import ExecConfig
from app.services.audit import strategy_equivalence_audit
from app.services.bench import (
    ResourceError,
    SummaryError,
    check_memory,
    preset,
    read_report_csv,
    run_scenario,
    summarize,
    write_report_csv,
    write_summary_csv,
)
from app.services.cluster import kmeans
from app.services.layout import CapacityError
from app.services.seeding import seed
from app.services.synthetic import data_stream, generate_points, parse_generator

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3
EXIT_DEGENERATE = 4

DEFAULT_BLOBS = 16
DEFAULT_SPREAD = 1.0


def _int_list(value: str) -> list[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{value}'") from exc


def _strategy_list(value: str) -> list[LayoutStrategy]:
    try:
        return [LayoutStrategy(part.strip()) for part in value.split(",") if part.strip()]
    except ValueError as exc:
        choices = ", ".join(s.value for s in LayoutStrategy)
        raise argparse.ArgumentTypeError(f"strategies must be among: {choices}") from exc


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="Point file (.csv, or .bin raw little-endian)")
    source.add_argument("--gen", type=str, help="Synthetic blobs: n=<N>,blobs=<B>,spread=<S>")
    parser.add_argument("--dims", type=int, default=2, help="Dimensionality of generated points (default: 2)")


def _add_exec_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[m.value for m in SeedingMode],
        default=SeedingMode.PARALLEL.value,
        help="Seeding path (default: parallel)",
    )
    parser.add_argument("--workers", type=int, help="Worker threads (default: logical cores)")
    parser.add_argument("--chunk-size", type=int, help=f"Points per chunk (default: {settings.chunk_size})")
    parser.add_argument(
        "--strategy",
        choices=[s.value for s in LayoutStrategy],
        help=f"Layout strategy (default: {settings.default_strategy})",
    )
    parser.add_argument("--rng-seed", type=int, help=f"Unsigned 64-bit seed (default: {settings.rng_seed})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmeanspp",
        description="Serial and data-parallel k-means++ seeding, Lloyd clustering and layout benchmarks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    seed_cmd = commands.add_parser("seed", help="Choose k initial centers with k-means++")
    _add_input_args(seed_cmd)
    seed_cmd.add_argument("--k", type=int, required=True, help="Number of centers")
    _add_exec_args(seed_cmd)
    seed_cmd.add_argument("--out", type=Path, required=True, help="Centers CSV, one centroid per line")

    cluster_cmd = commands.add_parser("cluster", help="Seed and run Lloyd iterations")
    _add_input_args(cluster_cmd)
    cluster_cmd.add_argument("--k", type=int, required=True, help="Number of clusters")
    _add_exec_args(cluster_cmd)
    cluster_cmd.add_argument("--max-iter", type=int, default=settings.max_iter, help="Lloyd iteration cap")
    cluster_cmd.add_argument("--tol", type=float, default=settings.tol, help="Squared centroid shift to stop at")
    cluster_cmd.add_argument(
        "--init",
        choices=[m.value for m in InitMethod],
        default=InitMethod.KMEANS_PP.value,
        help="Initialization (default: kmeans++)",
    )
    cluster_cmd.add_argument("--out", type=Path, required=True, help="Labels CSV, one integer per line")
    cluster_cmd.add_argument("--centroids-out", type=Path, help="Optional final centroids CSV")

    bench_cmd = commands.add_parser("bench", help="Run a clusters or points sweep")
    bench_cmd.add_argument("--sweep", choices=[a.value for a in SweepAxis], required=True)
    bench_cmd.add_argument("--fixed", type=int, help="N for a clusters sweep, K for a points sweep")
    bench_cmd.add_argument("--values", type=_int_list, help="Axis values, comma separated")
    bench_cmd.add_argument(
        "--scale-divisor",
        type=int,
        default=settings.bench_scale_divisor,
        help="Divide the published sweep sizes by this (1 = full scale)",
    )
    bench_cmd.add_argument("--strategies", type=_strategy_list, help="Comma list of layout strategies")
    bench_cmd.add_argument("--workers", type=_int_list, help="Comma list of worker counts")
    bench_cmd.add_argument("--trials", type=int, default=settings.bench_trials)
    bench_cmd.add_argument("--chunk-size", type=int, default=settings.chunk_size)
    bench_cmd.add_argument("--dims", type=int, default=2)
    bench_cmd.add_argument("--rng-seed", type=int, default=settings.rng_seed)
    bench_cmd.add_argument("--lloyd", action="store_true", help="Also time Lloyd clustering")
    bench_cmd.add_argument("--max-iter", type=int, default=10, help="Lloyd iteration cap when --lloyd")
    bench_cmd.add_argument("--out", type=Path, required=True, help="Timing report CSV")
    bench_cmd.add_argument("--summary-out", type=Path, help="Optional summary CSV")

    summary_cmd = commands.add_parser("summarize", help="Summarize a timing report CSV")
    summary_cmd.add_argument("--report", type=Path, required=True)
    summary_cmd.add_argument("--out", type=Path, help="Optional summary CSV")

    audit_cmd = commands.add_parser("audit", help="Check that every layout strategy seeds identically")
    audit_cmd.add_argument("--n", type=int, default=1000)
    audit_cmd.add_argument("--k", type=int, default=10)
    audit_cmd.add_argument("--rng-seed", type=int, default=42)
    audit_cmd.add_argument("--workers", type=int)
    audit_cmd.add_argument("--chunk-size", type=int)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = getattr(logging, settings.log_level, logging.INFO)
    if verbose or settings.debug:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _load_dataset(args: argparse.Namespace, seed_value: int) -> Dataset:
    if args.input is not None:
        return load_points(args.input)
    fields = parse_generator(args.gen)
    n = int(fields["n"])
    dims = int(fields.get("dims", args.dims))
    check_memory(n, dims)
    blobs = min(int(fields.get("blobs", DEFAULT_BLOBS)), n)
    return generate_points(n, dims, blobs, fields.get("spread", DEFAULT_SPREAD), data_stream(seed_value))


def _exec_config(args: argparse.Namespace) -> ExecConfig:
    return ExecConfig.from_settings(
        workers=args.workers,
        chunk_size=args.chunk_size,
        strategy=args.strategy,
        rng_seed=args.rng_seed,
    )


def _run_seed(args: argparse.Namespace) -> int:
    cfg = _exec_config(args)
    data = _load_dataset(args, cfg.rng_seed)
    result = seed(data, args.k, RngStream(cfg.rng_seed), cfg, SeedingMode(args.mode))
    save_points(args.out, result.centers.coords)
    print(
        "Seeding complete:",
        f"n={data.n}",
        f"k={result.rounds}",
        f"mode={result.mode.value}",
        f"strategy={cfg.strategy.value}",
        f"workers={cfg.workers}",
        f"indices={','.join(str(i) for i in result.indices.tolist())}",
    )
    if result.degenerate:
        print(f"Degenerate weights in rounds {result.degenerate_rounds}: uniform fallback used")
        return EXIT_DEGENERATE
    return EXIT_OK


def _run_cluster(args: argparse.Namespace) -> int:
    cfg = _exec_config(args)
    data = _load_dataset(args, cfg.rng_seed)
    seeding, result = kmeans(
        data,
        args.k,
        cfg,
        init=InitMethod(args.init),
        mode=SeedingMode(args.mode),
        max_iter=args.max_iter,
        tol=args.tol,
    )
    np.savetxt(args.out, result.labels, fmt="%d")
    if args.centroids_out is not None:
        save_points(args.centroids_out, result.centroids.coords)
    print(
        "Clustering complete:",
        f"n={data.n}",
        f"k={result.k}",
        f"iterations={result.iterations}",
        f"converged={result.converged}",
        f"cost={result.cost:.6g}",
    )
    if seeding.degenerate:
        print(f"Degenerate weights in rounds {seeding.degenerate_rounds}: uniform fallback used")
        return EXIT_DEGENERATE
    return EXIT_OK


def _print_summary(report_path: Path, out: Path | None) -> None:
    summary = summarize(read_report_csv(report_path))
    for row in summary.rows:
        delta = "-" if row.strategy_delta_pct is None else f"{row.strategy_delta_pct:+.1f}%"
        print(
            f"  {row.scenario} n={row.n_points} k={row.k} {row.strategy.value} w={row.workers} "
            f"{row.phase.value}: mean={row.mean_ms:.2f}ms min={row.min_ms:.2f}ms "
            f"speedup={row.speedup:.2f} delta={delta}"
        )
    for row in summary.crossover:
        print(
            f"  crossover: n={row.n_points} k={row.k} {row.strategy.value} "
            f"w={row.workers} slower than serial"
        )
    if out is not None:
        write_summary_csv(summary, out)


def _run_bench(args: argparse.Namespace) -> int:
    sweep = SweepAxis(args.sweep)
    workers = args.workers or sorted({1, settings.resolved_workers})
    spec: ScenarioSpec = preset(
        sweep,
        args.scale_divisor,
        fixed=args.fixed,
        values=args.values,
        strategies=args.strategies or list(LayoutStrategy),
        workers=workers,
        trials=args.trials,
        chunk_size=args.chunk_size,
        dims=args.dims,
        rng_seed=args.rng_seed,
        lloyd=args.lloyd,
        max_iter=args.max_iter,
    )
    report = run_scenario(spec)
    write_report_csv(report, args.out)
    print(f"Benchmark complete: rows={len(report.rows)} report={args.out}")
    _print_summary(args.out, args.summary_out)
    return EXIT_OK


def _run_summarize(args: argparse.Namespace) -> int:
    _print_summary(args.report, args.out)
    return EXIT_OK


def _run_audit(args: argparse.Namespace) -> int:
    seed_value = args.rng_seed
    data = generate_points(args.n, 2, min(DEFAULT_BLOBS, args.n), DEFAULT_SPREAD, data_stream(seed_value))
    report = strategy_equivalence_audit(
        data, args.k, seed_value, workers=args.workers, chunk_size=args.chunk_size
    )
    verdict = "PASS" if report.passed else "FAIL"
    print(f"Strategy audit n={report.n} k={report.k} seed={report.seed}: {verdict}")
    for mismatch in report.mismatches:
        print(f"  {mismatch}")
    return EXIT_OK if report.passed else EXIT_FAILED


HANDLERS = {
    "seed": _run_seed,
    "cluster": _run_cluster,
    "bench": _run_bench,
    "summarize": _run_summarize,
    "audit": _run_audit,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return HANDLERS[args.command](args)
    except ResourceError as exc:
        print(f"Resource error: {exc}")
        return EXIT_RESOURCE
    except (
        ContractError,
        InvalidRequestError,
        CapacityError,
        PointFileError,
        SummaryError,
        ValidationError,
    ) as exc:
        print(f"Invalid request: {exc}")
        return EXIT_INVALID


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
