from typing import List, Tuple

from nightday.backend.data_layer.models.price_models import DroppedDuplicate, PriceBar, PriceSeries
from nightday.system.exceptions import EmptyInputError, TooShortError
from nightday.system.setup_logging.get_logger import get_nightday_logger

logger = get_nightday_logger()


def sort_and_validate(series: PriceSeries) -> Tuple[PriceSeries, List[DroppedDuplicate]]:
    """Stable sort by date; for a repeated date the first occurrence in file order wins."""
    if len(series) == 0:
        raise EmptyInputError(f"`{series.symbol}` has no bars")

    positioned = sorted(enumerate(series.bars), key=lambda item: item[1].date)

    kept: List[PriceBar] = []
    dropped: List[DroppedDuplicate] = []
    for position, bar in positioned:
        if kept and kept[-1].date == bar.date:
            duplicate = DroppedDuplicate(date=bar.date, row_position=position)
            logger.warning(f"Dropped duplicate date {bar.date} in `{series.symbol}` (bar #{position})")
            dropped.append(duplicate)
            continue
        kept.append(bar)

    if len(kept) < 2:
        raise TooShortError(
            f"`{series.symbol}` has {len(kept)} distinct trading day(s) after deduplication, need at least 2",
            count=len(kept),
        )

    return series.with_bars(kept), dropped
