import json
from pathlib import Path
from typing import Dict

import pytest

from nightday.__main__ import main
from nightday.backend.analysis.synth.generators import generate_return_series
from nightday.backend.analysis.synth.write_synth_csv import write_synth_csv
from nightday.backend.data_layer.models.synth_spec import SynthSpec
from nightday.tests.regenerate_golden_files import (
    BOOTSTRAP_FLAGS,
    BUNDLED_PRICES,
    GOLDEN_ANALYZE_FLAGS,
    GOLDEN_FOLDER,
    SYNTH_FLAGS,
)

QUIET = ["--log-level", "WARNING"]


def folder_bytes(folder: Path) -> Dict[str, bytes]:
    return {path.name: path.read_bytes() for path in sorted(folder.iterdir()) if path.is_file()}


def write_panel(tmp_path: Path, count: int, n_days: int = 300) -> Path:
    lines = []
    for index in range(count):
        returns = generate_return_series(SynthSpec(kind="coupled_vol", n=n_days, coupling=1.0, seed=index))
        path = write_synth_csv(returns, tmp_path / "prices" / f"EQ{index:02d}.csv")
        group = "index" if index < 10 else "stock"
        lines.append(f"EQ{index:02d},prices/{path.name},{group}")
    manifest = tmp_path / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


@pytest.fixture
def synthetic_csv(tmp_path) -> Path:
    assert main(["synth", *SYNTH_FLAGS, "--out", str(tmp_path / "data"), *QUIET]) == 0
    return tmp_path / "data" / "coupled_vol_seed0.csv"


def test_synth_writes_a_readable_csv(synthetic_csv):
    lines = synthetic_csv.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "Date,Open,Close"
    assert len(lines) == 5001
    assert lines[1].startswith("2000-01-03,")


def test_analyze_is_deterministic(synthetic_csv, tmp_path, capsys):
    for run in ("first", "second"):
        exit_code = main(["analyze", "--input", str(synthetic_csv), *BOOTSTRAP_FLAGS,
                          "--out", str(tmp_path / run), *QUIET])
        assert exit_code == 0

    first = folder_bytes(tmp_path / "first")
    assert first == folder_bytes(tmp_path / "second")
    assert {"coupled_vol_seed0_report.json", "coupled_vol_seed0_report.csv", "coupled_vol_seed0_timeseries.svg",
            "coupled_vol_seed0_timeseries.csv", "coupled_vol_seed0_timeseries.json",
            "coupled_vol_seed0_ingest_log.json", "coupled_vol_seed0_clean_log.json"} <= set(first)

    report = json.loads(first["coupled_vol_seed0_report.json"])
    assert report["delta"] > 0.1
    assert report["n_pairs"] == 4999
    assert report["p_value"] < 0.01
    assert report["seed"] == 0
    assert report["ci_delta"][0] <= report["delta"] <= report["ci_delta"][1]


def test_analyze_matches_frozen_golden_files(tmp_path):
    assert GOLDEN_FOLDER.is_dir(), "golden files missing; run `python -m nightday.tests.regenerate_golden_files`"
    expected = folder_bytes(GOLDEN_FOLDER)

    assert main(["analyze", "--input", str(BUNDLED_PRICES), *GOLDEN_ANALYZE_FLAGS,
                 "--out", str(tmp_path / "out"), *QUIET]) == 0

    produced = folder_bytes(tmp_path / "out")
    assert sorted(produced) == sorted(expected)
    for name, content in expected.items():
        assert produced[name] == content, name


def test_bundled_prices_have_known_correlations(tmp_path):
    assert main(["analyze", "--input", str(BUNDLED_PRICES), "--format", "csv",
                 "--out", str(tmp_path / "out"), *QUIET]) == 0
    report = json.loads((tmp_path / "out" / "BUNDLED_report.json").read_text(encoding="utf-8"))
    assert (report["c_nd"], report["c_dn"], report["ratio"], report["n_pairs"]) == (1.0, 0.1, 10.0, 31)
    assert report["delta"] == 1.0 - 0.1


def test_empty_file_fails_with_reason(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")

    exit_code = main(["analyze", "--input", str(empty), "--out", str(tmp_path / "out"), *QUIET])

    assert exit_code == 1
    assert f"error reason=empty-input file={empty}" in capsys.readouterr().err


def test_constant_intra_day_prices_are_degenerate(tmp_path, capsys):
    flat = tmp_path / "flat.csv"
    rows = ["Date,Open,Close"] + [f"2020-01-{day:02d},{100 + day},{100 + day}" for day in range(1, 32)]
    rows += [f"2020-02-{day:02d},{200 + day},{200 + day}" for day in range(1, 10)]
    flat.write_text("\n".join(rows) + "\n", encoding="utf-8")

    exit_code = main(["analyze", "--input", str(flat), "--out", str(tmp_path / "out"), *QUIET])

    assert exit_code == 3
    assert "reason=degenerate-sample" in capsys.readouterr().err


def test_invalid_flags_are_a_configuration_error(synthetic_csv, tmp_path, capsys):
    exit_code = main(["analyze", "--input", str(synthetic_csv), "--boot", "50", "--out", str(tmp_path), *QUIET])
    assert exit_code == 2
    assert "reason=invalid-config" in capsys.readouterr().err


def test_missing_column_mapping_is_a_configuration_error(synthetic_csv, tmp_path, capsys):
    exit_code = main(["analyze", "--input", str(synthetic_csv), "--close-col", "Adj Close",
                      "--out", str(tmp_path), *QUIET])
    assert exit_code == 2
    assert "reason=missing-column" in capsys.readouterr().err


def test_batch_over_thirty_one_equities(tmp_path, capsys):
    manifest = write_panel(tmp_path, 31)

    exit_code = main(["batch", "--manifest", str(manifest), "--out", str(tmp_path / "out"),
                      "--format", "csv,svg", *QUIET])

    assert exit_code == 0
    assert capsys.readouterr().out.strip() == "31 of 31 equities satisfy C_nd > C_dn"
    out = tmp_path / "out"
    assert len((out / "scatter.csv").read_text(encoding="utf-8").splitlines()) == 32
    assert (out / "scatter.svg").read_text(encoding="utf-8").count('class="equity"') == 31
    assert not (out / "scatter.json").exists()
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["total"] == 31
    assert [group["group"] for group in summary["groups"]] == ["index", "stock"]
    assert len((out / "reports.csv").read_text(encoding="utf-8").splitlines()) == 32


def test_batch_continues_past_a_broken_file(tmp_path, capsys):
    manifest = write_panel(tmp_path, 3)
    (tmp_path / "prices" / "BROKEN.csv").write_text("Date,Open,Close\n", encoding="utf-8")
    with open(manifest, "a", encoding="utf-8") as file:
        file.write("BROKEN,prices/BROKEN.csv\n")

    exit_code = main(["batch", "--manifest", str(manifest), "--out", str(tmp_path / "out"),
                      "--format", "csv", *QUIET])

    captured = capsys.readouterr()
    assert exit_code == 1
    assert captured.out.strip() == "3 of 3 equities satisfy C_nd > C_dn"
    assert "reason=empty-input" in captured.err
    assert (tmp_path / "out" / "EQ02_report.json").exists()
    summary = json.loads((tmp_path / "out" / "summary.json").read_text(encoding="utf-8"))
    assert list(summary["failures"].values()) == ["empty-input"]


def test_parallel_batch_matches_serial_batch(tmp_path):
    manifest = write_panel(tmp_path, 4)
    for workers in ("1", "2"):
        assert main(["batch", "--manifest", str(manifest), "--workers", workers, "--boot", "200",
                     "--out", str(tmp_path / f"workers{workers}"), *QUIET]) == 0
    assert folder_bytes(tmp_path / "workers1") == folder_bytes(tmp_path / "workers2")


def test_report_redraws_panels_without_recomputing(tmp_path):
    manifest = write_panel(tmp_path, 5)
    assert main(["batch", "--manifest", str(manifest), "--out", str(tmp_path / "batch"), *QUIET]) == 0

    assert main(["report", "--reports", str(tmp_path / "batch"), "--out", str(tmp_path / "redrawn"), *QUIET]) == 0

    for name in ("scatter.csv", "scatter.json", "scatter.svg", "ratios.csv", "ratios.json", "ratios.svg"):
        assert (tmp_path / "redrawn" / name).read_bytes() == (tmp_path / "batch" / name).read_bytes()


def test_report_keeps_manifest_order_of_the_batch(tmp_path):
    symbols = ["SPX", "DAX", "AAPL"]
    lines = []
    for seed, symbol in enumerate(symbols):
        returns = generate_return_series(SynthSpec(kind="coupled_vol", n=300, coupling=1.0, seed=seed))
        write_synth_csv(returns, tmp_path / "prices" / f"{symbol}.csv")
        lines.append(f"{symbol},prices/{symbol}.csv,{'index' if seed < 2 else 'stock'}")
    manifest = tmp_path / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")

    assert main(["batch", "--manifest", str(manifest), "--out", str(tmp_path / "batch"), "--format", "csv",
                 *QUIET]) == 0
    assert main(["report", "--reports", str(tmp_path / "batch"), "--out", str(tmp_path / "redrawn"),
                 "--format", "csv", *QUIET]) == 0

    def panel_symbols(folder: Path):
        rows = (folder / "ratios.csv").read_text(encoding="utf-8").splitlines()[1:]
        return [row.split(",")[0] for row in rows]

    assert panel_symbols(tmp_path / "batch") == symbols
    assert panel_symbols(tmp_path / "redrawn") == symbols
    assert (tmp_path / "redrawn" / "scatter.csv").read_bytes() == (tmp_path / "batch" / "scatter.csv").read_bytes()


def test_lags_and_extras_are_written(synthetic_csv, tmp_path):
    exit_code = main(["analyze", "--input", str(synthetic_csv), "--symbol", "SYN", "--max-lag", "3",
                      "--autocorr-lag", "2", "--compare-methods", "--method", "kendall", "--format", "json",
                      "--out", str(tmp_path / "out"), *QUIET])
    assert exit_code == 0
    out = tmp_path / "out"
    lags = json.loads((out / "SYN_lags.json").read_text(encoding="utf-8"))
    assert [row["lag"] for row in lags["data"]] == [0, 1, 2, 3]
    report = json.loads((out / "SYN_report.json").read_text(encoding="utf-8"))
    assert report["method"] == "kendall"
    assert lags["data"][0]["night_leads_day"] == pytest.approx(report["c_nd"], abs=1e-6)
    methods = json.loads((out / "SYN_methods.json").read_text(encoding="utf-8"))
    assert sorted(methods["reports"]) == ["kendall", "pearson", "spearman"]
    assert (out / "SYN_autocorrelation.json").exists()
