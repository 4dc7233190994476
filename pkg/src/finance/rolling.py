"""
Rolling-window and two-series WFGCRI on shifted log returns.

Windows of ``window_len`` consecutive returns start every ``step`` returns, so
a series of length T yields floor((T - window_len) / step) + 1 windows. Each
window is estimated with the PHR plug-in estimator (psi(w) = w) for every
(beta, alpha). The shift is the global one of the ReturnSeries unless
``per_window_shift`` subtracts each window's own minimum instead.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, List, Sequence, Tuple
import logging

import numpy as np
import pandas as pd

from src.core.config import RollingConfig
from src.core.errors import DegenerateInputError, DomainError
from src.estimators.empirical import EmpiricalSample, estimate_wfgcri_two_sample, phr_curve
from src.finance.returns import ReturnSeries

logger = logging.getLogger(__name__)

ROLLING_COLUMNS = ["window_start", "beta", "alpha", "value", "degenerate"]


def window_starts(length: int, window_len: int, step: int) -> List[int]:
    if length < window_len:
        raise DomainError(
            "series is shorter than one window", length=length, window_len=window_len
        )
    return list(range(0, length - window_len + 1, step))


WindowTask = Tuple[Any, np.ndarray, Sequence[float], np.ndarray]


def _window_frame(task: WindowTask) -> Tuple[pd.DataFrame, bool]:
    label, window, alphas, betas = task
    sample = EmpiricalSample(window)
    degenerate = sample.distinct_count < 2
    frames = []
    for alpha in alphas:
        if degenerate:
            values = np.zeros(betas.size)
        else:
            values = phr_curve(sample, alpha, betas, weight_exp=1.0)
        frames.append(
            pd.DataFrame(
                {
                    "window_start": label,
                    "beta": betas,
                    "alpha": float(alpha),
                    "value": values,
                    "degenerate": degenerate,
                }
            )
        )
    return pd.concat(frames, ignore_index=True), degenerate


def rolling_wfgcri(returns: ReturnSeries, config: RollingConfig, jobs: int = 1) -> pd.DataFrame:
    """
    Long-format grid of window estimates.

    Args:
        returns: shifted log returns
        config: window length, step and the (beta, alpha) grid
        jobs: worker processes, one window per task

    Returns:
        DataFrame with columns window_start, beta, alpha, value, degenerate,
        ordered by window, then alpha, then beta. Windows with fewer than two
        distinct values are flagged degenerate with value 0.

    Raises:
        DegenerateInputError: no window has two distinct values.
    """
    betas = np.asarray(config.betas, dtype=float)
    starts = window_starts(len(returns), config.window_len, config.step)
    tasks: List[WindowTask] = []
    for start in starts:
        stop = start + config.window_len
        if config.per_window_shift:
            window = returns.raw[start:stop]
            window = window - window.min()
        else:
            window = returns.shifted[start:stop]
        tasks.append((returns.label(start), window, list(config.alphas), betas))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_window_frame, tasks))
    else:
        results = [_window_frame(task) for task in tasks]

    degenerate_count = sum(flag for _, flag in results)
    if degenerate_count == len(starts):
        raise DegenerateInputError(
            "no window has two distinct returns", windows=len(starts), window_len=config.window_len
        )
    if degenerate_count:
        logger.warning(f"{degenerate_count} of {len(starts)} windows have no spread")
    logger.info(
        f"rolled {len(starts)} windows of {config.window_len} (step {config.step}) over "
        f"{betas.size} betas and {len(config.alphas)} alphas"
    )
    return pd.concat([frame for frame, _ in results], ignore_index=True)[ROLLING_COLUMNS]


def _compare_cell(task: Tuple[EmpiricalSample, EmpiricalSample, float, float]) -> float:
    x, y, beta, weight_exp = task
    return estimate_wfgcri_two_sample(x, y, beta, weight_exp)


def compare_series(
    true_series: ReturnSeries,
    ref_series: ReturnSeries,
    betas: Sequence[float],
    weight_exp: float = 1.0,
    jobs: int = 1,
) -> pd.DataFrame:
    """
    Two-sample WFGCRI of the full shifted series against each other.

    Returns:
        DataFrame with columns beta, value.
    """
    if len(true_series) == 0 or len(ref_series) == 0:
        raise DomainError("both series must be nonempty")
    x = EmpiricalSample(true_series.shifted)
    y = EmpiricalSample(ref_series.shifted)
    tasks = [(x, y, float(b), weight_exp) for b in betas]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            values = list(executor.map(_compare_cell, tasks, chunksize=max(1, len(tasks) // jobs)))
    else:
        values = [_compare_cell(task) for task in tasks]
    logger.info(
        f"compared {true_series.name or 'true'} ({x.n}) against "
        f"{ref_series.name or 'ref'} ({y.n}) over {len(values)} betas"
    )
    return pd.DataFrame({"beta": np.asarray(betas, dtype=float), "value": values})
