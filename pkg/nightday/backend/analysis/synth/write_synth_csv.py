from pathlib import Path
from typing import Union

import pandas as pd

from nightday.backend.analysis.returns.compute_returns import reconstruct_prices
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.system.default_settings import DEFAULT_FIRST_CLOSE, SYNTH_CSV_FLOAT_FORMAT
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def synth_price_frame(rs: ReturnSeries, first_close: float = DEFAULT_FIRST_CLOSE) -> pd.DataFrame:
    series = reconstruct_prices(rs, first_close=first_close)
    return pd.DataFrame(
        {
            "Date": [bar.date.isoformat() for bar in series.bars],
            "Open": [bar.open for bar in series.bars],
            "Close": [bar.close for bar in series.bars],
        }
    )


def write_synth_csv(rs: ReturnSeries,
                    path: Union[str, Path],
                    first_close: float = DEFAULT_FIRST_CLOSE) -> Path:
    """Date,Open,Close with 17 significant digits, readable by the default ColumnSpec."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    synth_price_frame(rs, first_close=first_close).to_csv(
        path, index=False, float_format=SYNTH_CSV_FLOAT_FORMAT, lineterminator="\n"
    )
    logger.info(f"Wrote {len(rs)} synthetic bars for `{rs.symbol}` to {path}")
    return path
