"""Tests for the command-line entry point and its exit codes."""

import numpy as np
import pytest

from app.cli.main import (
    EXIT_DEGENERATE,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_RESOURCE,
    build_parser,
    main,
    run,
)
from app.core.config import settings
from app.core.dataset import save_points

pytestmark = pytest.mark.integration

GEN = "n=600,blobs=4,spread=1.0"


def test_seed_from_generator(tmp_path, capsys):
    out = tmp_path / "centers.csv"
    code = run(["seed", "--gen", GEN, "--k", "5", "--workers", "2", "--rng-seed", "7", "--out", str(out)])
    assert code == EXIT_OK
    centers = np.loadtxt(out, delimiter=",", ndmin=2)
    assert centers.shape == (5, 2)
    assert "Seeding complete" in capsys.readouterr().out


def test_serial_and_parallel_write_identical_centers(tmp_path):
    outputs = []
    for mode, strategy in (("serial", "shared"), ("parallel", "arena"), ("parallel", "replicated")):
        out = tmp_path / f"{mode}-{strategy}.csv"
        args = ["seed", "--gen", GEN, "--k", "8", "--mode", mode, "--strategy", strategy]
        assert run(args + ["--workers", "4", "--chunk-size", "64", "--out", str(out)]) == EXIT_OK
        outputs.append(out.read_text())
    assert outputs[0] == outputs[1] == outputs[2]


def test_seed_from_file_with_duplicates_reports_fallback(tmp_path, capsys):
    points = tmp_path / "dupes.csv"
    save_points(points, np.ones((10, 2)))
    out = tmp_path / "centers.csv"
    assert run(["seed", "--input", str(points), "--k", "3", "--out", str(out)]) == EXIT_DEGENERATE
    assert np.loadtxt(out, delimiter=",", ndmin=2).shape == (3, 2)
    assert "uniform fallback" in capsys.readouterr().out


@pytest.mark.parametrize(
    ("gen", "extra"),
    [
        (GEN, ["--k", "700"]),
        (GEN, ["--k", "0"]),
        (GEN, ["--k", "3", "--chunk-size", "0"]),
        ("n=5000,blobs=2,spread=1", ["--k", "4097", "--strategy", "replicated"]),
    ],
)
def test_invalid_requests_exit_2(tmp_path, gen, extra):
    args = ["seed", "--gen", gen] + extra + ["--out", str(tmp_path / "c.csv")]
    assert run(args) == EXIT_INVALID


def test_missing_point_file_exits_2(tmp_path):
    args = ["seed", "--input", str(tmp_path / "nope.csv"), "--k", "2", "--out", str(tmp_path / "c.csv")]
    assert run(args) == EXIT_INVALID


def test_bad_arguments_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["seed", "--gen", GEN, "--out", "c.csv"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["bench", "--sweep", "clusters", "--workers", "one", "--out", "r.csv"])
    assert exc.value.code == 2


def test_resource_error_exits_3(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "memory_headroom", 0.0)
    assert run(["seed", "--gen", GEN, "--k", "2", "--out", str(tmp_path / "c.csv")]) == EXIT_RESOURCE


def test_cluster_writes_labels(tmp_path, capsys):
    labels = tmp_path / "labels.csv"
    centroids = tmp_path / "centroids.csv"
    args = ["cluster", "--gen", GEN, "--k", "4", "--workers", "2", "--max-iter", "50"]
    assert run(args + ["--out", str(labels), "--centroids-out", str(centroids)]) == EXIT_OK
    values = np.loadtxt(labels, dtype=np.int64)
    assert values.shape == (600,)
    assert values.min() >= 0 and values.max() < 4
    assert np.loadtxt(centroids, delimiter=",").shape == (4, 2)
    assert "Clustering complete" in capsys.readouterr().out


def test_cluster_with_random_init(tmp_path):
    args = ["cluster", "--gen", GEN, "--k", "3", "--init", "random", "--out", str(tmp_path / "l.csv")]
    assert run(args) == EXIT_OK


def test_bench_then_summarize(tmp_path, capsys):
    report = tmp_path / "report.csv"
    summary = tmp_path / "summary.csv"
    args = [
        "bench",
        "--sweep",
        "clusters",
        "--fixed",
        "2000",
        "--values",
        "2,6",
        "--strategies",
        "shared,arena",
        "--workers",
        "1,2",
        "--trials",
        "1",
        "--out",
        str(report),
    ]
    assert run(args) == EXIT_OK
    header = report.read_text().splitlines()[0]
    assert header == "scenario,n_points,k,strategy,workers,chunk_size,phase,trial,wall_ms"
    assert len(report.read_text().splitlines()) == 1 + 2 * 2 * 2 * 2
    assert run(["summarize", "--report", str(report), "--out", str(summary)]) == EXIT_OK
    assert summary.exists()
    assert "speedup=" in capsys.readouterr().out


def test_summarize_without_baseline_exits_2(tmp_path):
    report = tmp_path / "report.csv"
    report.write_text(
        "scenario,n_points,k,strategy,workers,chunk_size,phase,trial,wall_ms\n"
        "points,1000,5,shared,4,1024,seeding,0,3.5\n"
    )
    assert run(["summarize", "--report", str(report)]) == EXIT_INVALID


def test_audit_passes(capsys):
    assert run(["audit", "--n", "800", "--k", "6", "--workers", "3"]) == EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_main_raises_exit_code(monkeypatch, tmp_path):
    out = tmp_path / "c.csv"
    monkeypatch.setattr("sys.argv", ["kmeanspp", "seed", "--gen", GEN, "--k", "2", "--out", str(out)])
    with pytest.raises(SystemExit) as exc:
        main()
    assert exc.value.code == EXIT_OK


def test_parser_lists_subcommands():
    help_text = build_parser().format_help()
    for command in ("seed", "cluster", "bench", "summarize", "audit"):
        assert command in help_text
