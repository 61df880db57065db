from pathlib import Path
from typing import Optional, Tuple, Union

from nightday.backend.data_layer.ingest.parse_csv import parse_csv
from nightday.backend.data_layer.ingest.sort_and_validate import sort_and_validate
from nightday.backend.data_layer.models.price_models import ColumnSpec, IngestLog, PriceSeries
from nightday.system.exceptions import InputError
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def load_price_file(path: Union[str, Path],
                    spec: ColumnSpec,
                    symbol: Optional[str] = None) -> Tuple[PriceSeries, IngestLog]:
    path = Path(path)
    symbol = symbol or path.stem
    logger.info(f"Loading `{symbol}` from {path}")

    try:
        text = path.read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"Could not read {path}: {e}") from e

    series, ingest_log = parse_csv(text=text, spec=spec, symbol=symbol, source=f"file:{path.name}")
    series, dropped = sort_and_validate(series)
    ingest_log.dropped_duplicates = dropped
    return series, ingest_log
