from typing import List, Optional

from pydantic import BaseModel

from nightday.backend.analysis.asymmetry.bootstrap_asymmetry import bootstrap_asymmetry
from nightday.backend.analysis.asymmetry.compute_asymmetry import (
    MethodComparison,
    compare_methods,
    compute_asymmetry,
)
from nightday.backend.analysis.asymmetry.lagged_xcorr import lagged_xcorr, volatility_autocorrelation
from nightday.backend.analysis.returns.compute_returns import compute_returns
from nightday.backend.data_layer.cleaning.clean_series import clean_series
from nightday.backend.data_layer.ingest.load_price_file import load_price_file
from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport
from nightday.backend.data_layer.models.clean_models import CleanLog
from nightday.backend.data_layer.models.correlation_models import (
    LaggedCorrelation,
    VolatilityAutocorrelation,
)
from nightday.backend.data_layer.models.price_models import IngestLog
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.backend.data_layer.models.run_config import RunConfig
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


class AnalysisOutcome(BaseModel):
    symbol: str
    report: AsymmetryReport
    ingest_log: IngestLog
    clean_log: CleanLog
    returns: ReturnSeries
    lagged: Optional[List[LaggedCorrelation]] = None
    autocorrelation: Optional[List[VolatilityAutocorrelation]] = None
    comparison: Optional[MethodComparison] = None


def analyze_price_file(config: RunConfig,
                       path: str,
                       symbol: Optional[str] = None,
                       group: Optional[str] = None) -> AnalysisOutcome:
    """ingest -> clean -> returns -> asymmetry (+ bootstrap, lags, extras as configured)."""
    series, ingest_log = load_price_file(path, config.columns, symbol=symbol)
    cleaned, clean_log = clean_series(series, config.clean_policy)
    returns = compute_returns(cleaned)

    if config.bootstrap is not None:
        report = bootstrap_asymmetry(
            returns,
            n_boot=config.bootstrap.n_boot,
            block_len=config.bootstrap.block_len,
            seed=config.bootstrap.seed,
            method=config.method,
            confidence=config.bootstrap.confidence,
            group=group,
        )
    else:
        report = compute_asymmetry(returns, method=config.method, group=group)

    outcome = AnalysisOutcome(
        symbol=series.symbol,
        report=report,
        ingest_log=ingest_log,
        clean_log=clean_log,
        returns=returns,
    )
    if config.max_lag is not None:
        outcome.lagged = lagged_xcorr(returns, max_lag=config.max_lag, method=config.method)
    if config.autocorr_lag is not None:
        outcome.autocorrelation = volatility_autocorrelation(returns, max_lag=config.autocorr_lag,
                                                             method=config.method)
    if config.compare_methods:
        outcome.comparison = compare_methods(returns, group=group)
    return outcome
