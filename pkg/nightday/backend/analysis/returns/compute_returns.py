from typing import List, Optional

import numpy as np

from nightday.backend.data_layer.models.price_models import PriceBar, PriceSeries
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.system.default_settings import DEFAULT_FIRST_CLOSE
from nightday.system.exceptions import NonPositivePriceError, TooShortError


def compute_returns(series: PriceSeries) -> ReturnSeries:
    """
    d[k] = ln(close_k / open_k) for every day, n[k] = ln(open_k / close_{k-1}) from day 2 on.

    A weekend or holiday gap is one overnight return; nothing is spread over calendar days.
    """
    if len(series) < 2:
        raise TooShortError(f"`{series.symbol}` needs at least 2 bars for returns, has {len(series)}",
                            count=len(series))

    opens = np.array([bar.open for bar in series.bars], dtype=float)
    closes = np.array([bar.close for bar in series.bars], dtype=float)

    nonpositive = ~((opens > 0) & (closes > 0))
    if nonpositive.any():
        first_bad = series.bars[int(np.argmax(nonpositive))]
        raise NonPositivePriceError(
            f"`{series.symbol}` has {int(nonpositive.sum())} bar(s) with a non-positive price "
            f"(first on {first_bad.date}); clean the series first"
        )

    return ReturnSeries(
        symbol=series.symbol,
        dates=series.dates,
        d=np.log(closes / opens),
        n=np.log(opens[1:] / closes[:-1]),
    )


def reconstruct_prices(rs: ReturnSeries,
                       first_close: float = DEFAULT_FIRST_CLOSE,
                       symbol: Optional[str] = None,
                       source: str = "reconstructed from returns") -> PriceSeries:
    """Inverse of compute_returns, anchored at close_1 = first_close."""
    opens: List[float] = []
    closes: List[float] = []
    opens.append(first_close / np.exp(rs.d[0]))
    closes.append(first_close)
    for k in range(1, len(rs)):
        open_k = closes[-1] * np.exp(rs.n[k - 1])
        opens.append(open_k)
        closes.append(open_k * np.exp(rs.d[k]))

    bars = [
        PriceBar(date=day, open=float(open_k), close=float(close_k))
        for day, open_k, close_k in zip(rs.dates, opens, closes)
    ]
    return PriceSeries(symbol=symbol or rs.symbol, bars=bars, source=source)


def telescoped_close_returns(series: PriceSeries) -> np.ndarray:
    """ln(close_k / close_{k-1}) for k = 2..N."""
    closes = np.array([bar.close for bar in series.bars], dtype=float)
    return np.log(closes[1:] / closes[:-1])

