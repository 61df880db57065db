import math
from typing import List, Tuple

from nightday.backend.data_layer.models.clean_models import CleanLog, CleanPolicy, RemovalRecord
from nightday.backend.data_layer.models.price_models import PriceBar, PriceSeries
from nightday.system.exceptions import TooShortError
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()

NONPOSITIVE_PRICE = "nonpositive price"
LOGRETURN_ABOVE_THRESHOLD = "log-return above threshold"


def _nonpositive_fields(bar: PriceBar) -> List[str]:
    return [name for name in ("open", "close") if not getattr(bar, name) > 0]


def _drop_nonpositive(bars: List[PriceBar], removals: List[RemovalRecord]) -> List[PriceBar]:
    kept = []
    for bar in bars:
        bad_fields = _nonpositive_fields(bar)
        if bad_fields:
            removals.append(RemovalRecord(date=bar.date, field=",".join(bad_fields), reason=NONPOSITIVE_PRICE))
            continue
        kept.append(bar)
    return kept


def _drop_large_moves(bars: List[PriceBar],
                      threshold: float,
                      removals: List[RemovalRecord]) -> List[PriceBar]:
    """
    Walk forward keeping a bar only if its intra-day move, and the overnight move from the
    last *kept* bar, are within the threshold. Removing a bar re-links the next night to
    the previous surviving close, so a second pass removes nothing more.
    """
    kept: List[PriceBar] = []
    for bar in bars:
        if not bar.is_positive:
            kept.append(bar)  # left for the nonpositive rule (or kept when that rule is off)
            continue
        intra_day = abs(math.log(bar.close / bar.open))
        if intra_day > threshold:
            removals.append(RemovalRecord(date=bar.date, field="close/open", reason=LOGRETURN_ABOVE_THRESHOLD))
            continue
        previous = next((candidate for candidate in reversed(kept) if candidate.is_positive), None)
        if previous is not None and abs(math.log(bar.open / previous.close)) > threshold:
            removals.append(RemovalRecord(date=bar.date, field="open/previous close",
                                          reason=LOGRETURN_ABOVE_THRESHOLD))
            continue
        kept.append(bar)
    return kept


def clean_series(series: PriceSeries, policy: CleanPolicy = CleanPolicy()) -> Tuple[PriceSeries, CleanLog]:
    """
    Remove structurally impossible bars (and, only if asked for, extreme moves).

    Outliers such as crashes and unadjusted split jumps are kept by default: the
    downstream statistics are rank based and meant to cope with them.
    """
    removals: List[RemovalRecord] = []
    bars = list(series.bars)

    if policy.drop_nonpositive_prices:
        bars = _drop_nonpositive(bars, removals)
    if policy.max_abs_logreturn is not None:
        bars = _drop_large_moves(bars, policy.max_abs_logreturn, removals)

    clean_log = CleanLog(input_bars=len(series), surviving_bars=len(bars), removals=removals)
    for record in removals:
        logger.debug(f"Removed {series.symbol} {record.date} ({record.field}): {record.reason}")
    if removals:
        logger.info(f"Cleaning `{series.symbol}` removed {len(removals)} bar(s): {clean_log.counts_per_reason}")

    if len(bars) < policy.min_length:
        raise TooShortError(
            f"`{series.symbol}` has {len(bars)} bars after cleaning, policy needs at least {policy.min_length}",
            count=len(bars),
        )

    return series.with_bars(bars), clean_log
