from collections import Counter
from datetime import date
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, validator

from nightday.system.default_settings import DEFAULT_MIN_LENGTH


class CleanPolicy(BaseModel):
    drop_nonpositive_prices: bool = True
    max_abs_logreturn: Optional[float] = None
    min_length: int = DEFAULT_MIN_LENGTH

    @validator("max_abs_logreturn")
    def threshold_positive(cls, value):
        if value is not None and not value > 0:
            raise ValueError("max_abs_logreturn must be > 0 when set")
        return value

    @validator("min_length")
    def min_length_positive(cls, value):
        if value < 2:
            raise ValueError("min_length must be at least 2")
        return value

    @classmethod
    def disabled(cls, min_length: int = 2) -> "CleanPolicy":
        return cls(drop_nonpositive_prices=False, max_abs_logreturn=None, min_length=min_length)


class RemovalRecord(BaseModel):
    date: date
    field: str
    reason: str


class CleanLog(BaseModel):
    input_bars: int = 0
    surviving_bars: int = 0
    removals: List[RemovalRecord] = Field(default_factory=list)

    @property
    def counts_per_reason(self) -> Dict[str, int]:
        return dict(sorted(Counter(record.reason for record in self.removals).items()))

    @property
    def is_balanced(self) -> bool:
        return len(self.removals) + self.surviving_bars == self.input_bars

    def to_document(self) -> dict:
        document = self.dict()
        document["counts_per_reason"] = self.counts_per_reason
        return document
