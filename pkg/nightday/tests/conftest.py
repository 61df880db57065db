from datetime import date, timedelta
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd
import pytest

from nightday.backend.analysis.synth.generators import generate_return_series
from nightday.backend.analysis.synth.write_synth_csv import write_synth_csv
from nightday.backend.data_layer.models.price_models import PriceBar, PriceSeries
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.backend.data_layer.models.synth_spec import SynthSpec


def make_series(prices: Sequence[Tuple[float, float]],
                symbol: str = "TEST",
                start: date = date(2020, 1, 1)) -> PriceSeries:
    """(open, close) pairs on consecutive calendar days."""
    bars = [
        PriceBar(date=start + timedelta(days=index), open=open_price, close=close_price)
        for index, (open_price, close_price) in enumerate(prices)
    ]
    return PriceSeries(symbol=symbol, bars=bars)


def random_prices(generator: np.random.Generator, n_bars: int) -> List[Tuple[float, float]]:
    log_moves = generator.normal(scale=0.02, size=2 * n_bars)
    levels = 100.0 * np.exp(np.cumsum(log_moves))
    return [(float(levels[2 * k]), float(levels[2 * k + 1])) for k in range(n_bars)]


def make_return_series(d: Sequence[float], n: Sequence[float], symbol: str = "RS") -> ReturnSeries:
    dates = [timestamp.date() for timestamp in pd.bdate_range(start="2021-01-04", periods=len(d))]
    return ReturnSeries(symbol=symbol, dates=dates, d=d, n=n)


def price_csv_text(prices: Sequence[Tuple[float, float]], start: date = date(2020, 1, 1)) -> str:
    lines = ["Date,Open,Close"]
    for index, (open_price, close_price) in enumerate(prices):
        lines.append(f"{(start + timedelta(days=index)).isoformat()},{open_price!r},{close_price!r}")
    return "\n".join(lines) + "\n"


@pytest.fixture
def generator() -> np.random.Generator:
    return np.random.default_rng(20231019)


@pytest.fixture
def coupled_returns() -> ReturnSeries:
    return generate_return_series(SynthSpec(kind="coupled_vol", n=2000, coupling=1.0, seed=3))


@pytest.fixture
def null_returns() -> ReturnSeries:
    return generate_return_series(SynthSpec(kind="null_vol", n=2000, seed=3))


@pytest.fixture
def coupled_csv(tmp_path) -> str:
    returns = generate_return_series(SynthSpec(kind="coupled_vol", n=400, coupling=1.0, seed=7))
    return str(write_synth_csv(returns, tmp_path / "inputs" / "COUPLED.csv"))
