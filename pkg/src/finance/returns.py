"""
Price ingestion and shifted log returns.

Input files are CSV with at least the columns ``date`` (ISO-8601) and
``close``; other columns are ignored. Rows with a missing or unparsable date,
or a missing or nonpositive close, are dropped and counted in a warning. The
trading-day index is positional: dates are not resampled.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union
import logging

import numpy as np
import pandas as pd

from src.core.errors import DomainError, IngestionError

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("date", "close")


@dataclass(eq=False)
class PriceSeries:
    """Daily closes P_t > 0 on strictly increasing dates."""

    dates: pd.DatetimeIndex
    closes: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        self.dates = pd.DatetimeIndex(self.dates)
        self.closes = np.asarray(self.closes, dtype=float)
        if len(self.dates) != self.closes.size:
            raise IngestionError(
                "dates and closes differ in length",
                dates=len(self.dates),
                closes=int(self.closes.size),
            )
        bad = np.flatnonzero(~(self.closes > 0))
        if bad.size:
            row = int(bad[0])
            raise IngestionError(
                f"nonpositive close at row {row}", row=row, close=float(self.closes[row])
            )
        if len(self.dates) > 1:
            steps = np.flatnonzero(np.diff(self.dates.asi8) <= 0)
            if steps.size:
                row = int(steps[0]) + 1
                raise IngestionError(
                    f"dates are not strictly increasing at row {row}",
                    row=row,
                    date=str(self.dates[row].date()),
                )

    def __len__(self) -> int:
        return int(self.closes.size)


@dataclass(eq=False)
class ReturnSeries:
    """Log returns R_t and the shifted values Z_t = R_t - shift >= 0."""

    raw: np.ndarray
    shifted: np.ndarray
    shift: float
    dates: Optional[pd.DatetimeIndex] = None
    name: str = ""

    @classmethod
    def from_raw(
        cls,
        raw: Sequence[float],
        dates: Optional[Sequence] = None,
        name: str = "",
    ) -> "ReturnSeries":
        """Shift ``raw`` by its global minimum so that min(shifted) is exactly 0."""
        values = np.asarray(raw, dtype=float)
        if values.size == 0:
            raise DomainError("return series is empty")
        if not np.all(np.isfinite(values)):
            row = int(np.flatnonzero(~np.isfinite(values))[0])
            raise IngestionError(f"non-finite return at row {row}", row=row)
        shift = float(values.min())
        index = pd.DatetimeIndex(dates) if dates is not None else None
        return cls(raw=values, shifted=values - shift, shift=shift, dates=index, name=name)

    def __len__(self) -> int:
        return int(self.raw.size)

    def label(self, position: int):
        """Date of ``position`` when dates are known, else the position itself."""
        if self.dates is None:
            return int(position)
        return self.dates[position].date().isoformat()


def log_returns(prices: Union[PriceSeries, Sequence[float]]) -> ReturnSeries:
    """
    R_t = ln P_t - ln P_{t-1}, shifted by the minimum over the whole series.

    Raises:
        DomainError: fewer than 2 prices.
        IngestionError: a nonpositive price, naming its row.
    """
    if not isinstance(prices, PriceSeries):
        closes = np.asarray(prices, dtype=float)
        prices = PriceSeries(pd.date_range("1970-01-01", periods=closes.size, freq="D"), closes)
        dates = None
    else:
        dates = prices.dates[1:]
    if len(prices) < 2:
        raise DomainError("log returns need at least 2 prices", n=len(prices))
    raw = np.diff(np.log(prices.closes))
    return ReturnSeries.from_raw(raw, dates=dates, name=prices.name)


def load_prices(path: Union[str, Path], name: Optional[str] = None) -> PriceSeries:
    """
    Read a ``date,close`` CSV into a PriceSeries.

    Raises:
        IngestionError: the file is missing, lacks a required column, or has
            dates out of order after cleaning.
    """
    path = Path(path)
    if not path.exists():
        raise IngestionError(f"price file not found: {path}", path=str(path))
    frame = pd.read_csv(path)
    frame.columns = [str(c).strip().lower() for c in frame.columns]
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise IngestionError(f"{path.name} is missing columns {missing}", missing=missing)

    dates = pd.to_datetime(frame["date"], errors="coerce", format="ISO8601")
    closes = pd.to_numeric(frame["close"], errors="coerce")
    keep = dates.notna() & closes.notna() & (closes > 0)
    dropped = int((~keep).sum())
    if dropped:
        logger.warning(f"{path.name}: dropped {dropped} rows with missing or nonpositive closes")
    if not keep.any():
        raise IngestionError(f"{path.name} has no usable rows", path=str(path))

    series = PriceSeries(
        dates=pd.DatetimeIndex(dates[keep]),
        closes=closes[keep].to_numpy(dtype=float),
        name=name or path.stem,
    )
    logger.info(f"loaded {len(series)} prices from {path}")
    return series
