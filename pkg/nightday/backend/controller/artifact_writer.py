import io
import json
from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from nightday.backend.controller.analysis_pipeline import AnalysisOutcome
from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport, BatchSummary
from nightday.backend.data_layer.models.panel_spec import PanelKind, PanelSpec
from nightday.backend.data_layer.utilities.number_format import format_number
from nightday.backend.report.emitters import emit_lags, emit_ratios, emit_scatter, emit_timeseries
from nightday.system.path_getters import get_output_path
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()

BATCH_SUMMARY_NAME = "summary.json"


def save_document(path: Union[str, Path], text: str) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)
    logger.debug(f"Wrote {path}")
    return str(path)


def json_text(document) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"


def report_rows_csv(reports: Sequence[AsymmetryReport]) -> str:
    rows = []
    for report in reports:
        row = report.to_row()
        rows.append(
            {
                key: format_number(value) if isinstance(value, float) else ("" if value is None else str(value))
                for key, value in row.items()
            }
        )
    columns = list(reports[0].to_row().keys())
    buffer = io.StringIO()
    pd.DataFrame(rows, columns=columns, dtype=str).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_analysis_artifacts(outcome: AnalysisOutcome, out_dir: str, formats: Sequence[str]) -> List[str]:
    symbol = outcome.symbol
    artifacts = [
        save_document(get_output_path(out_dir, symbol, "report", "json"), outcome.report.json(indent=2) + "\n"),
        save_document(get_output_path(out_dir, symbol, "report", "csv"), report_rows_csv([outcome.report])),
        save_document(get_output_path(out_dir, symbol, "ingest_log", "json"), outcome.ingest_log.json(indent=2) + "\n"),
        save_document(get_output_path(out_dir, symbol, "clean_log", "json"), json_text(outcome.clean_log.to_document())),
    ]

    for output_format in formats:
        spec = PanelSpec(kind=PanelKind.TIMESERIES, title=f"{symbol}: intra-day (a) and overnight (b) log-returns",
                         format=output_format)
        artifacts.append(
            save_document(get_output_path(out_dir, symbol, "timeseries", output_format),
                          emit_timeseries(outcome.returns, spec))
        )
        if outcome.lagged is not None:
            spec = PanelSpec(kind=PanelKind.LAGS, title=f"{symbol}: lagged volatility cross-correlations",
                             format=output_format)
            artifacts.append(
                save_document(get_output_path(out_dir, symbol, "lags", output_format),
                              emit_lags(outcome.lagged, spec, symbol=symbol))
            )

    if outcome.autocorrelation is not None:
        document = [entry.dict() for entry in outcome.autocorrelation]
        artifacts.append(save_document(get_output_path(out_dir, symbol, "autocorrelation", "json"),
                                       json_text(document)))
    if outcome.comparison is not None:
        artifacts.append(save_document(get_output_path(out_dir, symbol, "methods", "json"),
                                       outcome.comparison.json(indent=2) + "\n"))
    return artifacts


def write_cross_equity_panels(reports: Sequence[AsymmetryReport], out_dir: str, formats: Sequence[str]) -> List[str]:
    artifacts = []
    out_path = Path(out_dir)
    for output_format in formats:
        scatter_spec = PanelSpec(kind=PanelKind.SCATTER, title=f"C_nd against C_dn for {len(reports)} equities",
                                 format=output_format)
        ratio_spec = PanelSpec(kind=PanelKind.RATIO_BARS, title=f"C_nd / C_dn for {len(reports)} equities",
                               format=output_format)
        artifacts.append(save_document(out_path / f"scatter.{output_format}", emit_scatter(reports, scatter_spec)))
        artifacts.append(save_document(out_path / f"ratios.{output_format}", emit_ratios(reports, ratio_spec)))
    return artifacts


def write_batch_summary(summary: BatchSummary, reports: Sequence[AsymmetryReport], out_dir: str) -> List[str]:
    out_path = Path(out_dir)
    document = summary.dict()
    document["summary_line"] = summary.summary_line
    artifacts = [save_document(out_path / BATCH_SUMMARY_NAME, json_text(document))]
    if reports:
        ordered = sorted(reports, key=lambda report: report.symbol)
        artifacts.append(save_document(out_path / "reports.csv", report_rows_csv(ordered)))
    return artifacts
