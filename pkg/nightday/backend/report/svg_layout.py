from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from nightday.backend.data_layer.utilities.number_format import format_coordinate, format_number

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
DEFAULT_COLOR = "#444444"


@dataclass(frozen=True)
class LinearScale:
    """Maps a data interval onto a pixel interval (pixel interval may be reversed, for y)."""

    domain_low: float
    domain_high: float
    pixel_low: float
    pixel_high: float

    @classmethod
    def fit(cls, values: Sequence[float], pixel_low: float, pixel_high: float,
            include_zero: bool = False, padding: float = 0.05) -> "LinearScale":
        finite = [value for value in values if np.isfinite(value)]
        if include_zero:
            finite.append(0.0)
        low, high = (min(finite), max(finite)) if finite else (0.0, 1.0)
        if high == low:
            low, high = low - 0.5, high + 0.5
        pad = (high - low) * padding
        return cls(low - pad, high + pad, pixel_low, pixel_high)

    def __call__(self, value: float) -> float:
        fraction = (value - self.domain_low) / (self.domain_high - self.domain_low)
        return self.pixel_low + fraction * (self.pixel_high - self.pixel_low)

    def ticks(self, count: int = 5) -> List[Tuple[str, str]]:
        """(pixel position, label) pairs, evenly spaced over the domain."""
        values = np.linspace(self.domain_low, self.domain_high, count)
        return [(format_coordinate(self(value)), format_number(value, 3)) for value in values]


def polyline_points(xs: Sequence[float], ys: Sequence[float], x_scale: LinearScale, y_scale: LinearScale) -> str:
    return " ".join(f"{format_coordinate(x_scale(x))},{format_coordinate(y_scale(y))}" for x, y in zip(xs, ys))


def group_colors(groups: Sequence[str]) -> dict:
    labels = sorted({group for group in groups if group})
    return {label: PALETTE[index % len(PALETTE)] for index, label in enumerate(labels)}
