from typing import Dict, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from nightday.backend.analysis.rank_stats.correlations import correlate
from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport
from nightday.backend.data_layer.models.correlation_models import CorrelationMethod
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.system.default_settings import MIN_PAIRS
from nightday.system.exceptions import NightdayError, TooShortError
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def night_centered_triples(rs: ReturnSeries) -> np.ndarray:
    """
    One row per night k = 2..N: (|d| of day k-1, |n_k|, |d| of day k).

    Column 1 against column 2 is C_nd's pair set, column 0 against column 1 is C_dn's,
    both exactly N - 1 long.
    """
    vol_d = rs.vol_d
    return np.column_stack([vol_d[:-1], rs.vol_n, vol_d[1:]])


def require_pairs(rs: ReturnSeries, pairs: int, what: str = "asymmetry"):
    if pairs < MIN_PAIRS:
        raise TooShortError(
            f"`{rs.symbol}`: {what} needs at least {MIN_PAIRS} pairs, only {pairs} available "
            f"({len(rs)} trading days)",
            count=pairs,
        )


def correlations_from_triples(triples: np.ndarray, method: Union[str, CorrelationMethod]) -> Tuple[float, float]:
    c_nd = correlate(triples[:, 1], triples[:, 2], method).estimate
    c_dn = correlate(triples[:, 0], triples[:, 1], method).estimate
    return c_nd, c_dn


def compute_asymmetry(rs: ReturnSeries,
                      method: Union[str, CorrelationMethod] = CorrelationMethod.SPEARMAN,
                      group: Optional[str] = None) -> AsymmetryReport:
    """C_nd pairs each night with the following day, C_dn each day with the following night."""
    require_pairs(rs, len(rs) - 1)
    c_nd, c_dn = correlations_from_triples(night_centered_triples(rs), method)

    report = AsymmetryReport(
        symbol=rs.symbol,
        c_nd=c_nd,
        c_dn=c_dn,
        n_pairs=len(rs) - 1,
        method=CorrelationMethod(method),
        group=group,
    )
    logger.info(
        f"`{rs.symbol}` ({report.method}): C_nd={report.c_nd:.4f} C_dn={report.c_dn:.4f} "
        f"delta={report.delta:.4f} over {report.n_pairs} pairs"
    )
    return report


class MethodComparison(BaseModel):
    symbol: str
    reports: Dict[str, AsymmetryReport] = Field(default_factory=dict)
    failures: Dict[str, str] = Field(default_factory=dict)


def compare_methods(rs: ReturnSeries, group: Optional[str] = None) -> MethodComparison:
    """The same asymmetry under every correlation method, to see how much the rank statistics buy."""
    comparison = MethodComparison(symbol=rs.symbol)
    for method in CorrelationMethod:
        try:
            comparison.reports[method.value] = compute_asymmetry(rs, method=method, group=group)
        except NightdayError as e:
            logger.warning(f"`{rs.symbol}`: {method.value} asymmetry failed ({e.reason}): {e}")
            comparison.failures[method.value] = e.reason
    return comparison
