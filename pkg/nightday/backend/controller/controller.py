from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple, Union

from rich.console import Console
from rich.table import Table

from nightday.backend.analysis.synth.generators import generate_return_series
from nightday.backend.analysis.synth.write_synth_csv import write_synth_csv
from nightday.backend.analysis.asymmetry.summarize_groups import summarize_groups
from nightday.backend.controller.analysis_pipeline import AnalysisOutcome, analyze_price_file
from nightday.backend.controller.artifact_writer import (
    BATCH_SUMMARY_NAME,
    write_analysis_artifacts,
    write_batch_summary,
    write_cross_equity_panels,
)
from nightday.backend.data_layer.ingest.read_manifest import read_manifest
from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport, BatchSummary
from nightday.backend.data_layer.models.run_config import ManifestEntry, RunConfig
from nightday.backend.data_layer.models.run_outcome import FailureRecord, RunOutcome
from nightday.system.exceptions import EmptyInputError, InputError, NightdayError
from nightday.system.path_getters import clean_path_string
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()

EntryResult = Tuple[int, Union[AnalysisOutcome, FailureRecord]]


def analyze_manifest_entry(config: RunConfig, index: int, entry: ManifestEntry) -> EntryResult:
    """Process-pool friendly: never raises a NightdayError, returns it as a FailureRecord."""
    try:
        outcome = analyze_price_file(config, entry.path, symbol=entry.symbol, group=entry.group)
        write_analysis_artifacts(outcome, config.out, config.formats)
        return index, outcome
    except NightdayError as e:
        logger.error(f"`{entry.symbol}` failed ({e.reason}): {e}")
        logger.debug("Traceback:", exc_info=True)
        return index, FailureRecord.from_error(entry.path, e)


def order_as_batch(folder: Path, reports: List[AsymmetryReport]) -> List[AsymmetryReport]:
    """Panel order of the batch run that wrote `folder` (its summary.json); symbols it does not list go last."""
    summary_path = folder / BATCH_SUMMARY_NAME
    if not summary_path.exists():
        return reports
    try:
        symbols = BatchSummary.parse_file(summary_path).symbols
    except (ValueError, OSError) as e:
        logger.warning(f"Ignoring unreadable {summary_path}: {e}")
        return reports
    rank = {symbol: position for position, symbol in enumerate(symbols)}
    return sorted(reports, key=lambda report: rank.get(report.symbol, len(rank)))


class Controller:
    def __init__(self, config: RunConfig):
        self.config = config
        self.console = Console(stderr=True)

    def run(self) -> RunOutcome:
        logger.info(f"Running `{self.config.command}`")
        return getattr(self, f"run_{self.config.command}")()

    def run_analyze(self) -> RunOutcome:
        outcome = RunOutcome()
        for path in self.config.inputs:
            try:
                analysis = analyze_price_file(self.config, path, symbol=self.config.symbol)
                outcome.artifacts.extend(write_analysis_artifacts(analysis, self.config.out, self.config.formats))
            except NightdayError as e:
                logger.error(f"{path} failed ({e.reason}): {e}")
                logger.debug("Traceback:", exc_info=True)
                outcome.failures.append(FailureRecord.from_error(path, e))
        return outcome

    def run_batch(self) -> RunOutcome:
        outcome = RunOutcome()
        entries = read_manifest(self.config.manifest)
        logger.info(f"Batch of {len(entries)} equities with {self.config.workers} worker(s)")

        results = self._analyze_entries(entries)
        reports: List[AsymmetryReport] = []
        for _, result in sorted(results, key=lambda item: item[0]):
            if isinstance(result, FailureRecord):
                outcome.failures.append(result)
            else:
                reports.append(result.report)

        summary = summarize_groups(reports, failures={failure.file: failure.reason for failure in outcome.failures})
        if reports:
            outcome.artifacts.extend(write_cross_equity_panels(reports, self.config.out, self.config.formats))
        outcome.artifacts.extend(write_batch_summary(summary, reports, self.config.out))
        outcome.summary_line = summary.summary_line
        self._print_summary_table(summary, reports)
        return outcome

    def _analyze_entries(self, entries: List[ManifestEntry]) -> List[EntryResult]:
        if self.config.workers == 1:
            return [analyze_manifest_entry(self.config, index, entry) for index, entry in enumerate(entries)]
        with ProcessPoolExecutor(max_workers=self.config.workers) as executor:
            futures = [
                executor.submit(analyze_manifest_entry, self.config, index, entry)
                for index, entry in enumerate(entries)
            ]
            return [future.result() for future in futures]

    def run_synth(self) -> RunOutcome:
        spec = self.config.synth
        returns = generate_return_series(spec)
        name = clean_path_string(self.config.symbol or f"{spec.kind}_seed{spec.seed}")
        path = write_synth_csv(returns, Path(self.config.out) / f"{name}.csv")
        return RunOutcome(artifacts=[str(path)])

    def run_report(self) -> RunOutcome:
        outcome = RunOutcome()
        reports: List[AsymmetryReport] = []
        for location in map(Path, self.config.reports):
            if location.is_dir():
                loaded = [self._load_report(path, outcome) for path in sorted(location.glob("*_report.json"))]
                reports.extend(order_as_batch(location, [report for report in loaded if report is not None]))
            else:
                report = self._load_report(location, outcome)
                if report is not None:
                    reports.append(report)
        if not reports:
            error = EmptyInputError("No saved reports to render")
            outcome.failures.append(FailureRecord.from_error(",".join(self.config.reports), error))
            return outcome
        outcome.artifacts.extend(write_cross_equity_panels(reports, self.config.out, self.config.formats))
        return outcome

    @staticmethod
    def _load_report(path: Path, outcome: RunOutcome) -> Optional[AsymmetryReport]:
        try:
            return AsymmetryReport.parse_file(path)
        except (ValueError, OSError) as e:
            error = InputError(f"Could not load report {path}: {e}")
            outcome.failures.append(FailureRecord.from_error(str(path), error))
            return None

    def _print_summary_table(self, summary: BatchSummary, reports: List[AsymmetryReport]):
        table = Table(title=summary.summary_line)
        for column in ("symbol", "group", "C_nd", "C_dn", "C_nd/C_dn", "p"):
            table.add_column(column)
        for report in sorted(reports, key=lambda report: report.symbol):
            table.add_row(
                report.symbol,
                report.group or "",
                f"{report.c_nd:.4f}",
                f"{report.c_dn:.4f}",
                f"{report.ratio:.3f}" if report.ratio_defined else "undefined",
                "" if report.p_value is None else f"{report.p_value:.4f}",
            )
        self.console.print(table)


_CONTROLLER: Optional[Controller] = None


def get_controller(config: RunConfig) -> Controller:
    global _CONTROLLER
    if _CONTROLLER is None or _CONTROLLER.config != config:
        logger.debug("Creating Controller...")
        _CONTROLLER = Controller(config=config)
    return _CONTROLLER
