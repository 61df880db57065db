from enum import Enum
from typing import List

from pydantic import BaseModel, validator

from nightday.system.default_settings import MIN_CORRELATION_PAIRS


class CorrelationMethod(str, Enum):
    SPEARMAN = "spearman"
    KENDALL = "kendall"
    PEARSON = "pearson"


class RankVector(BaseModel):
    ranks: List[float]
    n: int

    @validator("n")
    def n_matches_ranks(cls, value, values):
        if "ranks" in values and value != len(values["ranks"]):
            raise ValueError(f"n={value} but {len(values['ranks'])} ranks")
        return value


class CorrelationResult(BaseModel):
    estimate: float
    n_pairs: int
    method: CorrelationMethod

    class Config:
        use_enum_values = True

    @validator("estimate")
    def estimate_bounded(cls, value):
        if not -1.0 <= value <= 1.0:
            raise ValueError(f"correlation estimate {value} outside [-1, 1]")
        return value

    @validator("n_pairs")
    def enough_pairs(cls, value):
        if value < MIN_CORRELATION_PAIRS:
            raise ValueError(f"at least {MIN_CORRELATION_PAIRS} pairs needed, got {value}")
        return value


class LaggedCorrelation(BaseModel):
    lag: int
    night_leads_day: CorrelationResult
    day_leads_night: CorrelationResult


class VolatilityAutocorrelation(BaseModel):
    lag: int
    day: CorrelationResult
    night: CorrelationResult
