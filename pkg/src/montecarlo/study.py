"""
Replication studies of the plug-in estimators.

For every sample size n and replication r one sample (or pair of samples) is
drawn from a PCG64 stream keyed by (seed, n, r) and reused across the beta
grid, so each cell is reproducible on its own and the result does not depend
on how replications are distributed over worker processes. Statistics are
reduced in replication order with compensated summation.
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import math
import time

import numpy as np
import pandas as pd

from src.core import constants as C
from src.core.config import StudyConfig
from src.core.errors import DomainError
from src.distributions.base import make_rng
from src.distributions.families import Exponential
from src.estimators.empirical import estimate_wfgcri_two_sample, phr_curve
from src.measures.closed_form import phr_study_true_value, two_sample_true_value

logger = logging.getLogger(__name__)

CELL_COLUMNS = ["beta", "n", "ab", "rmse", "ci_length", "mean_estimate", "true_value"]


@dataclass(frozen=True)
class StudyCell:
    """Summary statistics of one (beta, n) cell."""

    beta: float
    n: int
    ab: float
    rmse: float
    ci_length: float
    mean_estimate: float
    true_value: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass
class StudyReport:
    """All cells of a study, ordered by (beta, n)."""

    config: StudyConfig
    cells: List[StudyCell] = field(default_factory=list)
    elapsed: float = 0.0

    def cell(self, beta: float, n: int) -> StudyCell:
        for c in self.cells:
            if c.n == n and math.isclose(c.beta, beta, rel_tol=0.0, abs_tol=1e-12):
                return c
        raise KeyError(f"no cell for beta={beta}, n={n}")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([c.to_dict() for c in self.cells], columns=CELL_COLUMNS)


def default_betas(scenario: str) -> List[float]:
    """The default beta grid for ``scenario``."""
    if scenario == "phr":
        return list(C.PHR_STUDY_BETAS)
    return list(C.TWO_SAMPLE_BETAS)


def true_value(config: StudyConfig, beta: float) -> float:
    if config.scenario == "phr":
        return phr_study_true_value(config.rate, config.alpha, beta, config.weight_exp)
    return two_sample_true_value(config.true_rate, config.ref_rate, beta, config.weight_exp)


# =============================================================================
# Worker (module-level so the process pool can pickle it)
# =============================================================================


def _replicate_batch(args: Tuple[StudyConfig, int, Sequence[int]]) -> np.ndarray:
    """Estimates for replications ``reps`` at sample size n, shape (len(reps), len(betas))."""
    config, n, reps = args
    betas = np.asarray(config.betas, dtype=float)
    out = np.empty((len(reps), betas.size))
    for i, r in enumerate(reps):
        rng = make_rng(config.seed, n, 0 if config.fixed_replication_seed else r)
        if config.scenario == "phr":
            sample = Exponential(config.rate).draw(n, rng)
            out[i] = phr_curve(sample, config.alpha, betas, config.weight_exp)
        else:
            x = Exponential(config.true_rate).draw(n, rng)
            y = Exponential(config.ref_rate).draw(n, rng)
            out[i] = [estimate_wfgcri_two_sample(x, y, b, config.weight_exp) for b in betas]
    return out


def _chunks(count: int, parts: int) -> List[range]:
    bounds = np.linspace(0, count, parts + 1).astype(int)
    return [range(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def simulate_estimates(config: StudyConfig, n: int) -> np.ndarray:
    """All replications at sample size n, shape (replications, len(betas)), in replication order."""
    reps = config.replications
    if config.jobs == 1:
        return _replicate_batch((config, n, range(reps)))

    chunks = _chunks(reps, config.jobs * 4)
    results: Dict[int, np.ndarray] = {}
    with ProcessPoolExecutor(max_workers=config.jobs) as executor:
        futures = {
            executor.submit(_replicate_batch, (config, n, chunk)): i
            for i, chunk in enumerate(chunks)
        }
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return np.vstack([results[i] for i in range(len(chunks))])


# =============================================================================
# Reduction
# =============================================================================


def summarize_cell(estimates: np.ndarray, beta: float, n: int, truth: float) -> StudyCell:
    """
    AB, RMSE and CI length of one cell.

    The variance is the population variance, so RMSE**2 = AB**2 + variance.
    """
    values = [float(v) for v in estimates]
    count = len(values)
    if count == 0:
        raise DomainError("no estimates to summarize")
    if all(v == values[0] for v in values):
        mean = values[0]
    else:
        mean = math.fsum(values) / count
    variance = math.fsum((v - mean) ** 2 for v in values) / count
    rmse = math.sqrt(math.fsum((v - truth) ** 2 for v in values) / count)
    return StudyCell(
        beta=float(beta),
        n=int(n),
        ab=abs(mean - truth),
        rmse=rmse,
        ci_length=2.0 * C.CI_Z_95 * math.sqrt(variance),
        mean_estimate=mean,
        true_value=truth,
    )


def run_study(config: StudyConfig) -> StudyReport:
    """
    Run the replication study described by ``config``.

    Returns:
        StudyReport with one cell per (beta, n), ordered by beta then n.
    """
    start = time.time()
    betas = list(config.betas)
    by_n: Dict[int, np.ndarray] = {}
    for n in config.sample_sizes:
        by_n[n] = simulate_estimates(config, n)
        logger.info(
            f"{config.scenario}: n={n} done ({config.replications} replications, "
            f"{len(betas)} betas)"
        )

    cells = []
    for j, beta in sorted(enumerate(betas), key=lambda item: item[1]):
        truth = true_value(config, beta)
        for n in sorted(config.sample_sizes):
            cells.append(summarize_cell(by_n[n][:, j], beta, n, truth))

    report = StudyReport(config=config, cells=cells, elapsed=time.time() - start)
    logger.info(f"study finished in {report.elapsed:.1f}s, {len(cells)} cells")
    return report


def study_config_for(
    scenario: str, betas: Optional[Sequence[float]] = None, **kwargs
) -> StudyConfig:
    """StudyConfig with the scenario's default beta grid unless ``betas`` is given."""
    chosen = list(betas) if betas is not None else default_betas(scenario)
    return StudyConfig(scenario=scenario, betas=chosen, **kwargs)
