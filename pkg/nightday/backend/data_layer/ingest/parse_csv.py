import csv
import io
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from nightday.backend.data_layer.models.price_models import (
    ColumnSpec,
    IngestLog,
    PriceBar,
    PriceSeries,
    RejectedRow,
)
from nightday.system.exceptions import EmptyInputError, MalformedInputError, MissingColumnError
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def _to_number(column: pd.Series, decimal_comma: bool) -> pd.Series:
    cleaned = column.str.strip()
    if decimal_comma:
        cleaned = cleaned.str.replace(".", "", regex=False).str.replace(",", ".", regex=False)
    numbers = pd.to_numeric(cleaned, errors="coerce")
    return numbers.where(np.isfinite(numbers))


def _optional_value(value: float) -> Optional[float]:
    if pd.isna(value) or value < 0:
        return None
    return float(value)


def read_records(text: str, delimiter: str, name: str = "") -> Tuple[List[str], List[Tuple[int, List[str]]]]:
    """
    Split `text` into a header and (row_number, fields) records.

    Row numbers count lines after the header, so row k sits k lines below it; blank lines
    are skipped but still counted.
    """
    reader = csv.reader(io.StringIO(text), delimiter=delimiter, skipinitialspace=True)
    header: Optional[List[str]] = None
    header_line = 0
    records: List[Tuple[int, List[str]]] = []
    try:
        for fields in reader:
            if not any(field.strip() for field in fields):
                continue
            if header is None:
                header = [field.strip() for field in fields]
                header_line = reader.line_num
                continue
            records.append((reader.line_num - header_line, fields))
    except csv.Error as e:
        raise MalformedInputError(f"Could not parse `{name}` at line {reader.line_num}: {e}") from e
    return header or [], records


def _shape_problem(fields: List[str], width: int) -> Optional[str]:
    # trailing empty fields (a delimiter closing every row) are fine
    if len(fields) > width and any(field.strip() for field in fields[width:]):
        return f"expected {width} fields, found {len(fields)}"
    return None


def parse_csv(text: str,
              spec: ColumnSpec,
              symbol: str = "",
              source: str = "") -> Tuple[PriceSeries, IngestLog]:
    """
    Parse delimiter-separated OHLC text into a PriceSeries (file order, not yet sorted).

    Rows with an unparseable date, a missing / non-numeric open or close, or more non-empty
    fields than the header end up in the returned IngestLog, so accepted + rejected always
    equals the number of (non-blank) data rows. Prices are taken raw from the mapped columns;
    an adjusted-close column is never used.
    """
    name = symbol or source
    if not text.strip():
        raise EmptyInputError(f"No data found for `{name}`")

    header, records = read_records(text, spec.delimiter, name=name)

    positions: Dict[str, int] = {}
    for index, column in enumerate(header):
        positions.setdefault(column, index)
    missing = [column for column in spec.required_columns if column not in positions]
    if missing:
        raise MissingColumnError(f"Header of `{name}` is missing mapped column(s) {missing}; found {header}")

    if not records:
        raise EmptyInputError(f"`{name}` has a header but no data rows")

    width = len(header)
    used_columns = list(spec.required_columns) + [
        column for column in spec.optional_columns.values() if column is not None and column in positions
    ]
    padded = [fields[:width] + [""] * (width - len(fields)) for _, fields in records]
    frame = pd.DataFrame(
        {column: [row[positions[column]] for row in padded] for column in dict.fromkeys(used_columns)},
        dtype=str,
    )

    dates = pd.to_datetime(frame[spec.date_col].str.strip(), format=spec.strptime_format, errors="coerce")
    opens = _to_number(frame[spec.open_col], spec.decimal_comma)
    closes = _to_number(frame[spec.close_col], spec.decimal_comma)
    extras = {
        field_name: _to_number(frame[column], spec.decimal_comma)
        for field_name, column in spec.optional_columns.items()
        if column is not None and column in positions
    }

    ingest_log = IngestLog(data_rows=len(records))
    bars: List[PriceBar] = []
    for position, (row_number, fields) in enumerate(records):
        reasons = []
        shape_problem = _shape_problem(fields, width)
        if shape_problem is not None:
            reasons.append(shape_problem)
        else:
            if pd.isna(dates.iat[position]):
                reasons.append(f"unparseable date `{frame[spec.date_col].iat[position]}`")
            if pd.isna(opens.iat[position]):
                reasons.append(f"non-numeric open `{frame[spec.open_col].iat[position]}`")
            if pd.isna(closes.iat[position]):
                reasons.append(f"non-numeric close `{frame[spec.close_col].iat[position]}`")

        if reasons:
            rejected = RejectedRow(row_number=row_number, reason="; ".join(reasons), raw=spec.delimiter.join(fields))
            logger.warning(f"Rejected row {rejected.row_number} of `{name}`: {rejected.reason}")
            ingest_log.rejected_rows.append(rejected)
            continue

        bars.append(
            PriceBar(
                date=dates.iat[position].date(),
                open=float(opens.iat[position]),
                close=float(closes.iat[position]),
                **{field_name: _optional_value(values.iat[position]) for field_name, values in extras.items()},
            )
        )

    ingest_log.accepted = len(bars)
    if not bars:
        raise EmptyInputError(f"None of the {ingest_log.data_rows} data rows of `{name}` could be parsed")

    logger.debug(f"Parsed `{name}`: {ingest_log.accepted} bars accepted, {len(ingest_log.rejected_rows)} rows rejected")
    return PriceSeries(symbol=symbol, bars=bars, source=source), ingest_log
