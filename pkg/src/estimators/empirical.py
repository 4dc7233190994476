"""
Plug-in estimators of WFGCRI built on empirical survival functions.

Both estimators are exact finite sums over the cells of a step function, so no
quadrature is involved. With psi(w) = w**c the integral of psi over a cell
[t_k, t_{k+1}) is (t_{k+1}**(c+1) - t_k**(c+1)) / (c+1); c = 1 is the default
weight.

Tie convention: S_hat(w) = #{x_i > w} / n, which is right-continuous and well
defined for samples with repeated values.
"""

from dataclasses import dataclass
from typing import Sequence, Union
import logging
import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from src.core.errors import DegenerateInputError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EmpiricalSample:
    """Sorted non-negative observations."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.sort(np.asarray(self.values, dtype=float).ravel())
        if values.size and not np.all(np.isfinite(values)):
            raise DomainError("sample contains non-finite values")
        if values.size and values[0] < 0:
            raise DomainError("sample values must be >= 0", minimum=float(values[0]))
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Union["EmpiricalSample", ArrayLike]) -> "EmpiricalSample":
        if isinstance(values, EmpiricalSample):
            return values
        return cls(np.asarray(values, dtype=float))

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def distinct_count(self) -> int:
        return int(np.unique(self.values).size)

    def scaled(self, factor: float) -> "EmpiricalSample":
        return EmpiricalSample(self.values * factor)

    def sf(self, w: ArrayLike) -> Union[float, np.ndarray]:
        return empirical_sf(self, w)

    def __len__(self) -> int:
        return self.n


def _count_above(values: np.ndarray, w: np.ndarray) -> np.ndarray:
    return values.size - np.searchsorted(values, w, side="right")


def empirical_sf(sample: EmpiricalSample, w: ArrayLike) -> Union[float, np.ndarray]:
    """
    Empirical survival function (#observations strictly greater than w) / n.

    Args:
        sample: observations
        w: evaluation point(s), >= 0

    Returns:
        A float for scalar w, otherwise an array shaped like w.
    """
    sample = EmpiricalSample.of(sample)
    if sample.n == 0:
        raise DomainError("empirical sf of an empty sample")
    points = np.asarray(w, dtype=float)
    if np.any(np.isnan(points)) or np.any(points < 0):
        raise DomainError("empirical sf is evaluated at w >= 0")
    out = _count_above(sample.values, points) / sample.n
    return float(out) if out.ndim == 0 else out


def _weight_increment(lo: np.ndarray, hi: np.ndarray, weight_exp: float) -> np.ndarray:
    p = weight_exp + 1.0
    return (hi**p - lo**p) / p


def _check_beta(beta: float, weight_exp: float) -> None:
    if not beta >= 0:
        raise DomainError("beta must be >= 0", beta=beta)
    if not weight_exp >= 0:
        raise DomainError("weight exponent must be >= 0", weight_exp=weight_exp)


def _gamma_norm(beta: float) -> float:
    return math.exp(special.gammaln(beta + 1.0))


# =============================================================================
# Single sample, PHR reference
# =============================================================================


def _phr_cells(sample: EmpiricalSample, weight_exp: float):
    """Cell widths in psi-measure, S_hat on the cell and -ln S_hat, j = 1..n-1."""
    x = sample.values
    n = sample.n
    s = 1.0 - np.arange(1, n) / n
    return _weight_increment(x[:-1], x[1:], weight_exp), s, -np.log(s)


def estimate_wfgcri_phr(
    sample: Union[EmpiricalSample, ArrayLike],
    alpha: float,
    beta: float,
    weight_exp: float = 1.0,
) -> float:
    """
    WFGCRI of the sample's distribution against its PHR transform S**alpha.

        (alpha**beta / Gamma(beta+1)) sum_{j=1}^{n-1}
            (x_{j+1:n}**(c+1) - x_{j:n}**(c+1)) / (c+1) * (1 - j/n) * (-ln(1 - j/n))**beta

    The leading cell [0, x_{1:n}) is not part of the sum.

    Raises:
        DegenerateInputError: n < 2.
        DomainError: alpha <= 0 or beta < 0.
    """
    sample = EmpiricalSample.of(sample)
    if sample.n < 2:
        raise DegenerateInputError("the PHR estimator needs n >= 2", n=sample.n)
    if not alpha > 0:
        raise DomainError("alpha must be > 0", alpha=alpha)
    _check_beta(beta, weight_exp)
    width, s, log_term = _phr_cells(sample, weight_exp)
    total = float(np.sum(width * s * log_term**beta))
    return alpha**beta * total / _gamma_norm(beta)


def phr_curve(
    sample: Union[EmpiricalSample, ArrayLike],
    alpha: float,
    betas: Sequence[float],
    weight_exp: float = 1.0,
) -> np.ndarray:
    """estimate_wfgcri_phr over a grid of beta, sharing the cell computation."""
    sample = EmpiricalSample.of(sample)
    if sample.n < 2:
        raise DegenerateInputError("the PHR estimator needs n >= 2", n=sample.n)
    if not alpha > 0:
        raise DomainError("alpha must be > 0", alpha=alpha)
    betas = np.asarray(betas, dtype=float)
    for beta in betas:
        _check_beta(float(beta), weight_exp)
    width, s, log_term = _phr_cells(sample, weight_exp)
    base = width * s
    with np.errstate(divide="ignore"):
        log_log = np.log(log_term)
    rows = np.sum(base[None, :] * np.exp(betas[:, None] * log_log[None, :]), axis=1)
    norm = np.exp(special.gammaln(betas + 1.0))
    return alpha**betas * rows / norm


# =============================================================================
# Two samples
# =============================================================================


def two_sample_cells(x: EmpiricalSample, y: EmpiricalSample):
    """
    The grid 0 = t_0 < t_1 < ... of distinct observed values and both
    empirical sfs at the left end of each cell [t_k, t_{k+1}).
    """
    grid = np.unique(np.concatenate(([0.0], x.values, y.values)))
    left = grid[:-1]
    sf_x = _count_above(x.values, left) / x.n
    sf_y = _count_above(y.values, left) / y.n
    return grid, sf_x, sf_y


def estimate_wfgcri_two_sample(
    sample_x: Union[EmpiricalSample, ArrayLike],
    sample_y: Union[EmpiricalSample, ArrayLike],
    beta: float,
    weight_exp: float = 1.0,
) -> float:
    """
    Plug-in WFGCRI with both survival functions replaced by empirical ones.

        (1/Gamma(beta+1)) sum_k S_X(t_k) (-ln S_Y(t_k))**beta
                                 (t_{k+1}**(c+1) - t_k**(c+1)) / (c+1)

    Cells where S_Y(t_k) = 0 are skipped, which truncates the integral at the
    largest Y observation. Cells where S_Y(t_k) = 1 add nothing for beta > 0.

    Raises:
        DomainError: an empty sample or beta < 0.
    """
    x, y = EmpiricalSample.of(sample_x), EmpiricalSample.of(sample_y)
    if x.n == 0 or y.n == 0:
        raise DomainError("both samples must be nonempty", n=x.n, m=y.n)
    _check_beta(beta, weight_exp)
    grid, sf_x, sf_y = two_sample_cells(x, y)
    width = _weight_increment(grid[:-1], grid[1:], weight_exp)
    keep = (sf_x > 0) & (sf_y > 0)
    if beta > 0:
        keep &= sf_y < 1
    with np.errstate(divide="ignore"):
        log_term = np.where(keep, -np.log(np.where(keep, sf_y, 1.0)), 0.0)
    terms = np.where(keep, sf_x * log_term**beta * width, 0.0)
    return float(np.sum(terms)) / _gamma_norm(beta)


def estimate_wfgcre(
    sample: Union[EmpiricalSample, ArrayLike], beta: float, weight_exp: float = 1.0
) -> float:
    """Plug-in weighted fractional CRE, sum_k S(t_k)(-ln S(t_k))**beta over the cells."""
    sample = EmpiricalSample.of(sample)
    if sample.n == 0:
        raise DomainError("empty sample")
    _check_beta(beta, weight_exp)
    grid = np.unique(np.concatenate(([0.0], sample.values)))
    s = _count_above(sample.values, grid[:-1]) / sample.n
    width = _weight_increment(grid[:-1], grid[1:], weight_exp)
    keep = s > 0
    if beta > 0:
        keep &= s < 1
    with np.errstate(divide="ignore"):
        log_term = np.where(keep, -np.log(np.where(keep, s, 1.0)), 0.0)
    return float(np.sum(np.where(keep, s * log_term**beta * width, 0.0))) / _gamma_norm(beta)


def estimate_wcri(
    sample_x: Union[EmpiricalSample, ArrayLike],
    sample_y: Union[EmpiricalSample, ArrayLike],
    weight_exp: float = 1.0,
) -> float:
    """Plug-in weighted CRI (the two-sample estimator at beta = 1)."""
    return estimate_wfgcri_two_sample(sample_x, sample_y, 1.0, weight_exp)
