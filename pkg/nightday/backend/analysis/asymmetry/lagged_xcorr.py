from typing import List, Union

from nightday.backend.analysis.asymmetry.compute_asymmetry import require_pairs
from nightday.backend.analysis.rank_stats.correlations import correlate
from nightday.backend.data_layer.models.correlation_models import (
    CorrelationMethod,
    LaggedCorrelation,
    VolatilityAutocorrelation,
)
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.system.exceptions import InvalidSpecError


def lagged_xcorr(rs: ReturnSeries,
                 max_lag: int,
                 method: Union[str, CorrelationMethod] = CorrelationMethod.SPEARMAN) -> List[LaggedCorrelation]:
    """
    For lag l: night k against day k + l (night leads day) and day k against night k + 1 + l
    (day leads night). Lag 0 is exactly (C_nd, C_dn).
    """
    if max_lag < 0:
        raise InvalidSpecError(f"max_lag must be >= 0, got {max_lag}")
    require_pairs(rs, len(rs) - 1 - max_lag, what=f"lagged cross-correlation up to lag {max_lag}")

    vol_d, vol_n = rs.vol_d, rs.vol_n
    pairs_at_lag_0 = len(vol_n)
    lagged = []
    for lag in range(max_lag + 1):
        pairs = pairs_at_lag_0 - lag
        lagged.append(
            LaggedCorrelation(
                lag=lag,
                night_leads_day=correlate(vol_n[:pairs], vol_d[1 + lag:], method),
                day_leads_night=correlate(vol_d[:pairs], vol_n[lag:], method),
            )
        )
    return lagged


def volatility_autocorrelation(rs: ReturnSeries,
                               max_lag: int,
                               method: Union[str, CorrelationMethod] = CorrelationMethod.SPEARMAN
                               ) -> List[VolatilityAutocorrelation]:
    """Rank autocorrelation of |d| and of |n| at lags 1..max_lag."""
    if max_lag < 1:
        raise InvalidSpecError(f"max_lag must be >= 1 for autocorrelations, got {max_lag}")
    require_pairs(rs, len(rs) - 1 - max_lag, what=f"volatility autocorrelation up to lag {max_lag}")

    vol_d, vol_n = rs.vol_d, rs.vol_n
    return [
        VolatilityAutocorrelation(
            lag=lag,
            day=correlate(vol_d[:-lag], vol_d[lag:], method),
            night=correlate(vol_n[:-lag], vol_n[lag:], method),
        )
        for lag in range(1, max_lag + 1)
    ]
