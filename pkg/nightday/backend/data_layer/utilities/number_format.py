import math
from typing import Optional

from nightday.system.default_settings import SIGNIFICANT_DIGITS

UNDEFINED = "undefined"


def format_number(value: Optional[float], digits: int = SIGNIFICANT_DIGITS) -> str:
    """Fixed significant digits, correctly rounded from the binary value (ties to even)."""
    if value is None or not math.isfinite(value):
        return UNDEFINED
    text = f"{value:.{digits}g}"
    return "0" if text == "-0" else text


def rounded(value: Optional[float], digits: int = SIGNIFICANT_DIGITS) -> Optional[float]:
    """The number format_number prints, as a float (None stays None)."""
    text = format_number(value, digits)
    return None if text == UNDEFINED else float(text)


def format_coordinate(value: float) -> str:
    return f"{value:.2f}"
