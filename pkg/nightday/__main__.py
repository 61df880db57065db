import argparse
import sys
from typing import Any, Dict, List, Optional

from nightday.backend.controller.controller import get_controller
from nightday.backend.data_layer.models.run_outcome import FailureRecord
from nightday.system.default_settings import SUPPORTED_FORMATS
from nightday.system.exceptions import NightdayError
from nightday.system.load_run_config import build_run_config
from nightday.system.setup_logging.configure_logging import LogLevel, configure_logging
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def comma_separated_formats(text: str) -> List[str]:
    formats = [item.strip() for item in text.split(",") if item.strip()]
    unknown = [item for item in formats if item not in SUPPORTED_FORMATS]
    if unknown or not formats:
        raise argparse.ArgumentTypeError(f"formats must be a comma list of {SUPPORTED_FORMATS}, got `{text}`")
    return formats


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML run configuration (flags override it)")
    common.add_argument("--out", help="Output directory")
    common.add_argument("--format", dest="formats", type=comma_separated_formats,
                        help="Comma list of panel formats: csv,json,svg")
    common.add_argument("--seed", type=int, help="Random seed for the bootstrap or the generator (default 0)")
    common.add_argument("--log-level", default="INFO", choices=[level.name for level in LogLevel])
    common.add_argument("--log-dir", help="Also write a log file into this folder")

    columns = argparse.ArgumentParser(add_help=False)
    columns.add_argument("--date-col")
    columns.add_argument("--open-col")
    columns.add_argument("--close-col")
    columns.add_argument("--high-col")
    columns.add_argument("--low-col")
    columns.add_argument("--volume-col")
    columns.add_argument("--date-format", choices=["iso", "dmy"], help="iso: YYYY-MM-DD, dmy: DD.MM.YYYY")
    columns.add_argument("--delimiter", choices=[",", ";"])
    columns.add_argument("--decimal-comma", action="store_true", default=None,
                         help="Numbers use ',' as decimal separator ('.' separates thousands)")

    analysis = argparse.ArgumentParser(add_help=False)
    analysis.add_argument("--method", choices=["spearman", "kendall", "pearson"])
    analysis.add_argument("--min-length", type=int, help="Minimum bars surviving cleaning (default 30)")
    analysis.add_argument("--max-abs-logreturn", type=float,
                          help="Drop bars implying a larger |log-return| (default: keep everything)")
    analysis.add_argument("--keep-nonpositive", action="store_true", default=None,
                          help="Do not drop bars with non-positive prices")
    analysis.add_argument("--boot", type=int, help="Number of bootstrap resamples (enables the bootstrap)")
    analysis.add_argument("--block-len", type=int, help="Bootstrap block length (default ceil((N-1)^(1/3)))")
    analysis.add_argument("--confidence", type=float, help="Bootstrap interval level (default 0.95)")
    analysis.add_argument("--max-lag", type=int, help="Also compute lagged cross-correlations up to this lag")
    analysis.add_argument("--compare-methods", action="store_true", default=None,
                          help="Also report the asymmetry under spearman, kendall and pearson")

    parser = argparse.ArgumentParser(
        prog="nightday",
        description="Asymmetry of rank cross-correlations between overnight and intra-day volatilities",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common, columns, analysis],
                                  help="Analyze one or more price files")
    analyze.add_argument("--input", action="append", help="Price history file (repeatable)")
    analyze.add_argument("--symbol", help="Symbol for a single input (default: file name)")
    analyze.add_argument("--autocorr-lag", type=int, help="Also compute volatility autocorrelations up to this lag")

    batch = commands.add_parser("batch", parents=[common, columns, analysis],
                                help="Analyze every file of a manifest and draw the cross-equity panels")
    batch.add_argument("--manifest", help="Text file with one `symbol,path[,group]` per line")
    batch.add_argument("--workers", type=int, help="Parallel worker processes (default 1)")

    synth = commands.add_parser("synth", parents=[common], help="Write a synthetic price history CSV")
    synth.add_argument("--kind", choices=["coupled_vol", "null_vol", "copula_pair"], default="coupled_vol")
    synth.add_argument("--n", type=int, default=5000, help="Number of trading days")
    synth.add_argument("--coupling", type=float, default=1.0, help="Night-to-day coupling (coupled_vol)")
    synth.add_argument("--rho", type=float, help="Latent Gaussian correlation of night and day (copula_pair)")
    synth.add_argument("--scale", type=float, help="Return scale (default 0.01)")
    synth.add_argument("--symbol", help="File name stem (default <kind>_seed<seed>)")

    report = commands.add_parser("report", parents=[common], help="Re-draw cross-equity panels from saved reports")
    report.add_argument("--reports", nargs="+", help="Saved *_report.json files or folders holding them")
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    def get(name: str):
        return getattr(args, name, None)

    overrides: Dict[str, Any] = {
        "command": args.command,
        "inputs": get("input"),
        "symbol": get("symbol"),
        "manifest": get("manifest"),
        "reports": get("reports"),
        "out": get("out"),
        "formats": get("formats"),
        "workers": get("workers"),
        "method": get("method"),
        "max_lag": get("max_lag"),
        "autocorr_lag": get("autocorr_lag"),
        "compare_methods": get("compare_methods"),
        "columns": {
            "date_col": get("date_col"),
            "open_col": get("open_col"),
            "close_col": get("close_col"),
            "high_col": get("high_col"),
            "low_col": get("low_col"),
            "volume_col": get("volume_col"),
            "date_format": get("date_format"),
            "delimiter": get("delimiter"),
            "decimal_comma": get("decimal_comma"),
        },
        "clean_policy": {
            "min_length": get("min_length"),
            "max_abs_logreturn": get("max_abs_logreturn"),
            "drop_nonpositive_prices": False if get("keep_nonpositive") else None,
        },
    }
    bootstrap = {"n_boot": get("boot"), "block_len": get("block_len"), "confidence": get("confidence")}
    if any(value is not None for value in bootstrap.values()):
        overrides["bootstrap"] = bootstrap
    if args.command == "synth":
        overrides["synth"] = {
            "kind": args.kind,
            "n": args.n,
            "coupling": args.coupling,
            "rho": args.rho,
            "scale": args.scale,
            "seed": 0,
        }
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(LogLevel[args.log_level], log_dir=args.log_dir)

    try:
        config = build_run_config(overrides_from_args(args), config_path=args.config, seed=args.seed)
        outcome = get_controller(config).run()
    except NightdayError as e:
        logger.debug("Traceback:", exc_info=True)
        failed_file = getattr(args, "manifest", None) or args.config or "-"
        print(FailureRecord.from_error(failed_file, e).as_line(), file=sys.stderr)
        return e.exit_code

    for failure in outcome.failures:
        print(failure.as_line(), file=sys.stderr)
    if outcome.summary_line is not None:
        print(outcome.summary_line)
    if outcome.exit_code == 0:
        logger.success(f"Wrote {len(outcome.artifacts)} artifact(s)")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
