"""Price series ingestion, shifted log returns and rolling WFGCRI."""

from src.finance.returns import PriceSeries, ReturnSeries, load_prices, log_returns
from src.finance.rolling import ROLLING_COLUMNS, compare_series, rolling_wfgcri, window_starts

__all__ = [
    "PriceSeries",
    "ROLLING_COLUMNS",
    "ReturnSeries",
    "compare_series",
    "load_prices",
    "log_returns",
    "rolling_wfgcri",
    "window_starts",
]
