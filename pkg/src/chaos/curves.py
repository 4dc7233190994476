"""
WFGCRI-versus-beta curves of chaotic trajectories.

Each trajectory is treated as a sample and passed to the PHR plug-in estimator
with psi(w) = w. A trajectory with fewer than two distinct values has no
spread to measure: its row is reported as zeros and flagged degenerate.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union
import logging

import numpy as np
import pandas as pd

from src.chaos.maps import MapKind, MapSpec, iterate
from src.core import constants as C
from src.core.errors import DomainError
from src.estimators.empirical import EmpiricalSample, phr_curve

logger = logging.getLogger(__name__)


@dataclass
class CurveResult:
    """Values indexed (r, beta), with one degeneracy flag per r."""

    kind: MapKind
    r_values: np.ndarray
    betas: np.ndarray
    values: np.ndarray
    degenerate: np.ndarray

    def row(self, r: float) -> np.ndarray:
        idx = int(np.argmin(np.abs(self.r_values - r)))
        return self.values[idx]

    def to_frame(self) -> pd.DataFrame:
        """Long format: r, beta, value, degenerate."""
        n_r, n_b = self.values.shape
        return pd.DataFrame(
            {
                "r": np.repeat(self.r_values, n_b),
                "beta": np.tile(self.betas, n_r),
                "value": self.values.ravel(),
                "degenerate": np.repeat(self.degenerate, n_b),
            }
        )


def _curve_row(args: Tuple[MapSpec, np.ndarray, float]) -> Tuple[np.ndarray, bool]:
    spec, betas, alpha = args
    sample = EmpiricalSample(iterate(spec))
    if sample.distinct_count < 2:
        logger.warning(f"{spec.kind.value} r={spec.r:g}: trajectory is constant, reporting 0")
        return np.zeros(betas.size), True
    return phr_curve(sample, alpha, betas, weight_exp=1.0), False


def wfgcri_curve(
    kind: Union[MapKind, str],
    r_values: Sequence[float],
    betas: Sequence[float],
    alpha: float = C.CHAOS_ALPHA,
    x0: float = C.CHAOS_X0,
    n: int = C.CHAOS_LENGTH,
    burn_in: int = 0,
    jobs: int = 1,
) -> CurveResult:
    """
    PHR-estimator curves over ``betas`` for each control parameter in ``r_values``.

    Args:
        kind: ricker or tent
        r_values: control parameters, one curve each
        betas: fractional orders
        alpha: PHR exponent of the reference sf
        x0: start of every trajectory
        n: trajectory length
        burn_in: states dropped before the trajectory is used
        jobs: worker processes, one r per task
    """
    kind = MapKind.parse(kind)
    if not alpha > 0:
        raise DomainError("alpha must be > 0", alpha=alpha)
    if not len(r_values) or not len(betas):
        raise DomainError("r_values and betas must be nonempty")
    grid = np.asarray(betas, dtype=float)
    if np.any(grid < 0):
        raise DomainError("betas must be >= 0")
    tasks = [(MapSpec(kind, float(r), x0, n, burn_in), grid, alpha) for r in r_values]

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows: List[Tuple[np.ndarray, bool]] = list(executor.map(_curve_row, tasks))
    else:
        rows = [_curve_row(task) for task in tasks]

    values = np.vstack([row for row, _ in rows])
    degenerate = np.array([flag for _, flag in rows], dtype=bool)
    logger.info(f"{kind.value}: {len(r_values)} curves over {grid.size} betas")
    return CurveResult(kind, np.asarray(r_values, dtype=float), grid, values, degenerate)
