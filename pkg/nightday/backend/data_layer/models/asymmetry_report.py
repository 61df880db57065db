from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, root_validator, validator

from nightday.backend.data_layer.models.correlation_models import CorrelationMethod
from nightday.system.default_settings import RATIO_EPSILON


class AsymmetryReport(BaseModel):
    """C_nd (night before the day) vs C_dn (night after the day) for one equity."""

    symbol: str
    c_nd: float
    c_dn: float
    ratio: Optional[float] = None
    ratio_defined: bool = False
    delta: float = 0.0
    n_pairs: int
    method: CorrelationMethod
    group: Optional[str] = None
    ci_delta: Optional[Tuple[float, float]] = None
    ci_widened: Optional[bool] = None  # percentile interval missed delta and was stretched to it
    confidence: Optional[float] = None
    p_value: Optional[float] = None
    n_boot: Optional[int] = None
    block_len: Optional[int] = None
    seed: Optional[int] = None
    rng: Optional[str] = None

    class Config:
        use_enum_values = True

    @validator("c_nd", "c_dn")
    def correlation_bounded(cls, value):
        if not -1.0 <= value <= 1.0:
            raise ValueError(f"correlation {value} outside [-1, 1]")
        return value

    @root_validator(skip_on_failure=True)
    def derived_fields(cls, values):
        c_nd, c_dn = values["c_nd"], values["c_dn"]
        values["delta"] = c_nd - c_dn
        if abs(c_dn) > RATIO_EPSILON:
            values["ratio"] = c_nd / c_dn
            values["ratio_defined"] = True
        else:
            values["ratio"] = None
            values["ratio_defined"] = False

        interval = values.get("ci_delta")
        if interval is not None:
            lower, upper = interval
            if not lower <= values["delta"] <= upper:
                raise ValueError(f"ci_delta {interval} does not contain delta={values['delta']}")
        return values

    @property
    def satisfies_inequality(self) -> bool:
        return self.c_nd > self.c_dn

    def with_bootstrap(self, **bootstrap_fields) -> "AsymmetryReport":
        return AsymmetryReport(**{**self.dict(), **bootstrap_fields})

    def to_row(self) -> Dict[str, object]:
        lower, upper = self.ci_delta if self.ci_delta is not None else (None, None)
        return {
            "symbol": self.symbol,
            "group": self.group,
            "method": self.method,
            "n_pairs": self.n_pairs,
            "c_nd": self.c_nd,
            "c_dn": self.c_dn,
            "ratio": self.ratio,
            "ratio_defined": self.ratio_defined,
            "delta": self.delta,
            "ci_lower": lower,
            "ci_upper": upper,
            "ci_widened": self.ci_widened,
            "confidence": self.confidence,
            "p_value": self.p_value,
            "n_boot": self.n_boot,
            "block_len": self.block_len,
            "seed": self.seed,
            "rng": self.rng,
        }


class GroupSummary(BaseModel):
    group: str
    count: int
    satisfying: int
    mean_delta: float
    mean_ratio: Optional[float] = None
    undefined_ratios: int = 0


class BatchSummary(BaseModel):
    total: int
    satisfying: int
    symbols: List[str] = Field(default_factory=list)
    groups: List[GroupSummary] = Field(default_factory=list)
    failures: Dict[str, str] = Field(default_factory=dict)

    @property
    def summary_line(self) -> str:
        return f"{self.satisfying} of {self.total} equities satisfy C_nd > C_dn"
