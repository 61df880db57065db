from typing import List, Literal, Optional

from pydantic import BaseModel, Field, root_validator, validator

from nightday.backend.data_layer.models.clean_models import CleanPolicy
from nightday.backend.data_layer.models.correlation_models import CorrelationMethod
from nightday.backend.data_layer.models.price_models import ColumnSpec
from nightday.backend.data_layer.models.synth_spec import SynthSpec
from nightday.system.default_settings import (
    DEFAULT_CONFIDENCE,
    DEFAULT_N_BOOT,
    DEFAULT_SEED,
    MIN_N_BOOT,
    SUPPORTED_FORMATS,
)


class BootstrapSettings(BaseModel):
    n_boot: int = DEFAULT_N_BOOT
    block_len: Optional[int] = None  # None -> ceil((N - 1) ** (1/3))
    seed: int = DEFAULT_SEED
    confidence: float = DEFAULT_CONFIDENCE

    @validator("n_boot")
    def enough_resamples(cls, value):
        if value < MIN_N_BOOT:
            raise ValueError(f"n_boot must be >= {MIN_N_BOOT}")
        return value

    @validator("block_len")
    def block_len_positive(cls, value):
        if value is not None and value < 1:
            raise ValueError("block_len must be >= 1")
        return value

    @validator("seed")
    def seed_nonnegative(cls, value):
        if value < 0:
            raise ValueError("seed must be >= 0")
        return value

    @validator("confidence")
    def confidence_open_interval(cls, value):
        if not 0.0 < value < 1.0:
            raise ValueError("confidence must lie in (0, 1)")
        return value


class ManifestEntry(BaseModel):
    symbol: str
    path: str
    group: Optional[str] = None


class RunConfig(BaseModel):
    command: Literal["analyze", "batch", "synth", "report"]
    inputs: List[str] = Field(default_factory=list)
    symbol: Optional[str] = None
    manifest: Optional[str] = None
    reports: List[str] = Field(default_factory=list)
    columns: ColumnSpec = Field(default_factory=ColumnSpec)
    clean_policy: CleanPolicy = Field(default_factory=CleanPolicy)
    method: CorrelationMethod = CorrelationMethod.SPEARMAN
    bootstrap: Optional[BootstrapSettings] = None
    max_lag: Optional[int] = None
    autocorr_lag: Optional[int] = None
    compare_methods: bool = False
    synth: Optional[SynthSpec] = None
    out: str = "."
    formats: List[str] = Field(default_factory=lambda: list(SUPPORTED_FORMATS))
    workers: int = 1

    class Config:
        use_enum_values = True

    @validator("formats", each_item=True)
    def format_supported(cls, value):
        if value not in SUPPORTED_FORMATS:
            raise ValueError(f"format `{value}` not one of {SUPPORTED_FORMATS}")
        return value

    @validator("max_lag")
    def max_lag_nonnegative(cls, value):
        if value is not None and value < 0:
            raise ValueError("max_lag must be >= 0")
        return value

    @validator("autocorr_lag")
    def autocorr_lag_positive(cls, value):
        if value is not None and value < 1:
            raise ValueError("autocorr_lag must be >= 1")
        return value

    @validator("workers")
    def workers_positive(cls, value):
        if value < 1:
            raise ValueError("workers must be >= 1")
        return value

    @root_validator(skip_on_failure=True)
    def command_consistent(cls, values):
        command = values["command"]
        if values.get("bootstrap") is not None and command not in ("analyze", "batch"):
            raise ValueError("bootstrap settings are only valid with analyze or batch")
        if command == "analyze" and not values.get("inputs"):
            raise ValueError("analyze needs at least one --input")
        if command == "analyze" and values.get("symbol") and len(values["inputs"]) > 1:
            raise ValueError("--symbol can only be used with a single --input")
        if command == "batch" and not values.get("manifest"):
            raise ValueError("batch needs --manifest")
        if command == "synth" and values.get("synth") is None:
            raise ValueError("synth needs synthetic-process settings")
        if command == "synth" and len(values.get("inputs", [])) > 0:
            raise ValueError("synth writes a file; pass the target with --out")
        if command == "report" and not values.get("reports"):
            raise ValueError("report needs --reports")
        return values
