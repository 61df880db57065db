import math
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from nightday.backend.analysis.asymmetry.compute_asymmetry import (
    compute_asymmetry,
    correlations_from_triples,
    night_centered_triples,
)
from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport
from nightday.backend.data_layer.models.correlation_models import CorrelationMethod
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.system.default_settings import (
    DEFAULT_CONFIDENCE,
    DEFAULT_N_BOOT,
    DEFAULT_SEED,
    MIN_N_BOOT,
    RNG_SCHEME,
)
from nightday.system.exceptions import DegenerateSampleError, InvalidSpecError
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def default_block_len(n_pairs: int) -> int:
    return max(1, math.ceil(n_pairs ** (1.0 / 3.0)))


def resample_generator(seed: int, resample_index: int) -> np.random.Generator:
    """Counter-based stream per (seed, resample), so resamples can be drawn in any order."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, resample_index])))


def circular_block_indices(n_rows: int, block_len: int, generator: np.random.Generator) -> np.ndarray:
    n_blocks = math.ceil(n_rows / block_len)
    starts = generator.integers(0, n_rows, size=n_blocks)
    indices = (starts[:, None] + np.arange(block_len)[None, :]).ravel()[:n_rows]
    return indices % n_rows


def resample_delta(triples: np.ndarray,
                   resample_index: int,
                   block_len: int,
                   seed: int,
                   method: Union[str, CorrelationMethod]) -> float:
    indices = circular_block_indices(len(triples), block_len, resample_generator(seed, resample_index))
    c_nd, c_dn = correlations_from_triples(triples[indices], method)
    return c_nd - c_dn


def resample_deltas(triples: np.ndarray,
                    resample_indices: Iterable[int],
                    block_len: int,
                    seed: int,
                    method: Union[str, CorrelationMethod]) -> np.ndarray:
    deltas = []
    for resample_index in resample_indices:
        try:
            deltas.append(resample_delta(triples, resample_index, block_len, seed, method))
        except DegenerateSampleError:
            logger.debug(f"Resample {resample_index} is degenerate, skipped")
            deltas.append(np.nan)
    return np.array(deltas, dtype=float)


def percentile_interval(deltas: np.ndarray, delta: float, confidence: float) -> Tuple[float, float, bool]:
    """Percentile interval of `deltas`, stretched to contain `delta`; the flag tells whether it was."""
    tail = (1.0 - confidence) / 2.0
    lower, upper = (float(value) for value in np.quantile(deltas, [tail, 1.0 - tail]))
    if lower <= delta <= upper:
        return lower, upper, False
    return min(lower, delta), max(upper, delta), True


def bootstrap_asymmetry(rs: ReturnSeries,
                        n_boot: int = DEFAULT_N_BOOT,
                        block_len: Optional[int] = None,
                        seed: int = DEFAULT_SEED,
                        method: Union[str, CorrelationMethod] = CorrelationMethod.SPEARMAN,
                        confidence: float = DEFAULT_CONFIDENCE,
                        group: Optional[str] = None) -> AsymmetryReport:
    """
    Circular block bootstrap of delta = C_nd - C_dn.

    Rows are night-centered triples, so each resample recomputes both correlations on the
    same resampled days and nights. Blocks keep the volatility clustering inside them.
    The interval is the percentile interval at `confidence`; p_value is the share of
    resamples with delta <= 0 (one-sided, against C_nd > C_dn). An interval that misses
    delta is stretched to contain it and flagged with `ci_widened`.
    """
    report = compute_asymmetry(rs, method=method, group=group)
    n_rows = report.n_pairs

    if n_boot < MIN_N_BOOT:
        raise InvalidSpecError(f"n_boot must be >= {MIN_N_BOOT}, got {n_boot}")
    if not 0.0 < confidence < 1.0:
        raise InvalidSpecError(f"confidence must lie in (0, 1), got {confidence}")
    if seed < 0:
        raise InvalidSpecError(f"seed must be >= 0, got {seed}")
    if block_len is None:
        block_len = default_block_len(n_rows)
    if not 1 <= block_len <= n_rows / 2:
        raise InvalidSpecError(f"block_len must lie in [1, {n_rows / 2:g}] for {n_rows} pairs, got {block_len}")

    logger.debug(f"Bootstrapping `{rs.symbol}`: {n_boot} resamples, block_len={block_len}, seed={seed}")
    deltas = resample_deltas(night_centered_triples(rs), range(n_boot), block_len, seed, method)
    valid = deltas[np.isfinite(deltas)]
    if len(valid) == 0:
        raise DegenerateSampleError(f"`{rs.symbol}`: every bootstrap resample was degenerate")
    if len(valid) < len(deltas):
        logger.warning(f"`{rs.symbol}`: {len(deltas) - len(valid)} of {n_boot} resamples were degenerate")

    lower, upper, widened = percentile_interval(valid, report.delta, confidence)
    if widened:
        logger.warning(
            f"`{rs.symbol}`: percentile interval missed delta={report.delta:.4f}, widened to [{lower:.4f}, {upper:.4f}]"
        )

    p_value = float(np.mean(valid <= 0.0))
    logger.info(f"`{rs.symbol}`: delta={report.delta:.4f} CI=[{lower:.4f}, {upper:.4f}] p={p_value:.4f}")

    return report.with_bootstrap(
        ci_delta=(lower, upper),
        ci_widened=widened,
        confidence=confidence,
        p_value=p_value,
        n_boot=n_boot,
        block_len=block_len,
        seed=seed,
        rng=RNG_SCHEME,
    )
