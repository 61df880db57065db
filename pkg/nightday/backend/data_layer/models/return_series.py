from datetime import date
from typing import List

import numpy as np
import pandas as pd
from pydantic import BaseModel, root_validator


class ReturnSeries(BaseModel):
    """
    Intra-day returns d[k] for trading days k = 1..N and overnight returns n[k] for k = 2..N.

    Arrays are 0-based: `d[i]` is day i+1, `n[j]` is the night before day j+2, so
    `n[j]` pairs with `d[j + 1]` (the following day) and `d[j]` (the preceding day).
    """

    symbol: str
    dates: List[date]
    d: np.ndarray
    n: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @root_validator(pre=True)
    def arrays_as_float(cls, values):
        for key in ("d", "n"):
            if key in values:
                array = np.array(values[key], dtype=float)
                array.setflags(write=False)
                values[key] = array
        return values

    @root_validator(skip_on_failure=True)
    def lengths_consistent(cls, values):
        d, n = values["d"], values["n"]
        if d.ndim != 1 or n.ndim != 1:
            raise ValueError("d and n must be one-dimensional")
        if len(values["dates"]) != len(d):
            raise ValueError(f"{len(values['dates'])} dates for {len(d)} intra-day returns")
        if len(n) != len(d) - 1:
            raise ValueError(f"expected {len(d) - 1} overnight returns, got {len(n)}")
        return values

    def __len__(self):
        return len(self.d)

    def __eq__(self, other):
        if not isinstance(other, ReturnSeries):
            return NotImplemented
        return (
                self.symbol == other.symbol
                and self.dates == other.dates
                and np.array_equal(self.d, other.d)
                and np.array_equal(self.n, other.n)
        )

    @property
    def vol_d(self) -> np.ndarray:
        return np.abs(self.d)

    @property
    def vol_n(self) -> np.ndarray:
        return np.abs(self.n)

    def to_frame(self) -> pd.DataFrame:
        n_column = np.concatenate([[np.nan], self.n])
        return pd.DataFrame(
            {
                "date": [day.isoformat() for day in self.dates],
                "d": self.d,
                "n": n_column,
                "abs_d": self.vol_d,
                "abs_n": np.abs(n_column),
            }
        )
