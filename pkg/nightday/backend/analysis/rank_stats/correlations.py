from typing import Callable, Dict, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from nightday.backend.data_layer.models.correlation_models import (
    CorrelationMethod,
    CorrelationResult,
    RankVector,
)
from nightday.system.default_settings import MIN_CORRELATION_PAIRS
from nightday.system.exceptions import DegenerateSampleError, NonFiniteValueError, TooShortError

ArrayLike = Union[Sequence[float], np.ndarray]


def _as_finite_array(x: ArrayLike, name: str = "x") -> np.ndarray:
    values = np.ascontiguousarray(x, dtype=float)
    if values.ndim != 1:
        raise NonFiniteValueError(f"`{name}` must be one-dimensional, got shape {values.shape}")
    if not np.isfinite(values).all():
        raise NonFiniteValueError(f"`{name}` contains {int((~np.isfinite(values)).sum())} non-finite value(s)")
    return values


def _as_paired_arrays(x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    x_values = _as_finite_array(x, "x")
    y_values = _as_finite_array(y, "y")
    if len(x_values) != len(y_values):
        raise TooShortError(f"paired samples differ in length: {len(x_values)} vs {len(y_values)}")
    if len(x_values) < MIN_CORRELATION_PAIRS:
        raise TooShortError(
            f"{len(x_values)} pairs, need at least {MIN_CORRELATION_PAIRS}", count=len(x_values)
        )
    return x_values, y_values


def _require_variation(values: np.ndarray, name: str):
    if np.ptp(values) == 0:
        raise DegenerateSampleError(f"`{name}` is constant ({len(values)} equal values); correlation undefined")


def midrank_array(x: ArrayLike) -> np.ndarray:
    """Average ranks (ties share the mean of the positions they span), 1-based."""
    values = _as_finite_array(x)
    if len(values) == 0:
        raise TooShortError("cannot rank an empty sample", count=0)
    return stats.rankdata(values, method="average")


def midranks(x: ArrayLike) -> RankVector:
    ranks = midrank_array(x)
    return RankVector(ranks=ranks.tolist(), n=len(ranks))


def _product_moment(x: np.ndarray, y: np.ndarray) -> float:
    x_centered = x - x.mean()
    y_centered = y - y.mean()
    denominator = np.sqrt((x_centered @ x_centered) * (y_centered @ y_centered))
    if denominator == 0:
        raise DegenerateSampleError("zero variance sample; correlation undefined")
    return float(np.clip((x_centered @ y_centered) / denominator, -1.0, 1.0))


def pearson(x: ArrayLike, y: ArrayLike) -> CorrelationResult:
    x_values, y_values = _as_paired_arrays(x, y)
    _require_variation(x_values, "x")
    _require_variation(y_values, "y")
    return CorrelationResult(
        estimate=_product_moment(x_values, y_values),
        n_pairs=len(x_values),
        method=CorrelationMethod.PEARSON,
    )


def spearman(x: ArrayLike, y: ArrayLike) -> CorrelationResult:
    """
    <r_x r_y> - <r_x><r_y> over sigma_x sigma_y, evaluated on midranks.

    This is the product-moment correlation of the midranks, which stays correct under
    ties where the 1 - 6 sum(delta^2) / (n (n^2 - 1)) shortcut does not.
    """
    x_values, y_values = _as_paired_arrays(x, y)
    _require_variation(x_values, "x")
    _require_variation(y_values, "y")
    return CorrelationResult(
        estimate=_product_moment(stats.rankdata(x_values, method="average"),
                                 stats.rankdata(y_values, method="average")),
        n_pairs=len(x_values),
        method=CorrelationMethod.SPEARMAN,
    )


def kendall_tau(x: ArrayLike, y: ArrayLike) -> CorrelationResult:
    """Tie-corrected tau-b, O(n log n) via scipy's merge-sort implementation."""
    x_values, y_values = _as_paired_arrays(x, y)
    _require_variation(x_values, "x")
    _require_variation(y_values, "y")
    estimate = stats.kendalltau(x_values, y_values, variant="b")[0]
    if not np.isfinite(estimate):
        raise DegenerateSampleError("tau-b undefined for this sample")
    return CorrelationResult(
        estimate=float(np.clip(estimate, -1.0, 1.0)),
        n_pairs=len(x_values),
        method=CorrelationMethod.KENDALL,
    )


CORRELATION_FUNCTIONS: Dict[str, Callable[[ArrayLike, ArrayLike], CorrelationResult]] = {
    CorrelationMethod.SPEARMAN.value: spearman,
    CorrelationMethod.KENDALL.value: kendall_tau,
    CorrelationMethod.PEARSON.value: pearson,
}


def correlate(x: ArrayLike, y: ArrayLike, method: Union[str, CorrelationMethod]) -> CorrelationResult:
    return CORRELATION_FUNCTIONS[CorrelationMethod(method).value](x, y)
