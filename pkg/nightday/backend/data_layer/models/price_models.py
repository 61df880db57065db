from datetime import date
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, validator


class PriceBar(BaseModel):
    """One trading day. open/close must be positive once the series has been cleaned."""

    date: date
    open: float
    close: float
    high: Optional[float] = None
    low: Optional[float] = None
    volume: Optional[float] = None

    @validator("high", "low", "volume")
    def optional_fields_nonnegative(cls, value):
        if value is not None and value < 0:
            raise ValueError("high/low/volume must be nonnegative")
        return value

    @property
    def is_positive(self) -> bool:
        return self.open > 0 and self.close > 0


class PriceSeries(BaseModel):
    symbol: str
    bars: List[PriceBar] = Field(default_factory=list)
    source: str = ""

    def __len__(self):
        return len(self.bars)

    @property
    def dates(self) -> List[date]:
        return [bar.date for bar in self.bars]

    @property
    def is_strictly_increasing(self) -> bool:
        dates = self.dates
        return all(earlier < later for earlier, later in zip(dates, dates[1:]))

    def with_bars(self, bars: List[PriceBar]) -> "PriceSeries":
        return PriceSeries(symbol=self.symbol, bars=bars, source=self.source)


class ColumnSpec(BaseModel):
    """How to find the fields of a PriceBar in a delimiter-separated file."""

    date_col: str = "Date"
    open_col: str = "Open"
    close_col: str = "Close"
    high_col: Optional[str] = None
    low_col: Optional[str] = None
    volume_col: Optional[str] = None
    date_format: Literal["iso", "dmy"] = "iso"
    delimiter: Literal[",", ";"] = ","
    decimal_comma: bool = False

    @property
    def strptime_format(self) -> str:
        return {"iso": "%Y-%m-%d", "dmy": "%d.%m.%Y"}[self.date_format]

    @property
    def required_columns(self) -> List[str]:
        return [self.date_col, self.open_col, self.close_col]

    @property
    def optional_columns(self) -> dict:
        return {
            "high": self.high_col,
            "low": self.low_col,
            "volume": self.volume_col,
        }


class RejectedRow(BaseModel):
    row_number: int  # 1-based data row, header excluded
    reason: str
    raw: str = ""


class DroppedDuplicate(BaseModel):
    date: date
    row_position: int  # position in the parsed (pre-sort) bar list


class IngestLog(BaseModel):
    data_rows: int = 0
    accepted: int = 0
    rejected_rows: List[RejectedRow] = Field(default_factory=list)
    dropped_duplicates: List[DroppedDuplicate] = Field(default_factory=list)

    @property
    def is_balanced(self) -> bool:
        return self.accepted + len(self.rejected_rows) == self.data_rows
