"""
Abstract base class for parametric survival models.

Every model is defined through its cumulative hazard H(w) = -ln S(w), the one
primitive concrete families must supply together with the hazard rate. All
other quantities (sf, pdf, cdf, quantiles, sampling) derive from it here, so
transforms such as proportional hazards only have to rewrite H.

Models are immutable value objects: they can be hashed, pickled for worker
processes and shared freely between threads.

Usage:
    from src.distributions.base import SurvivalModel

    class Constant(SurvivalModel):
        def cumhazard(self, w): ...
        def hazard(self, w): ...
        def to_spec(self) -> str: ...
"""

from abc import ABC, abstractmethod
from enum import Enum, auto
from typing import ClassVar, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
from scipy import integrate, optimize

from src.core import constants as C
from src.core.errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]


class ModelFamily(Enum):
    """Enumeration of model families for categorization."""

    EXPONENTIAL = auto()
    WEIBULL = auto()
    RAYLEIGH = auto()
    GAMMA_SHAPE2 = auto()
    MIXTURE_HAZARD = auto()
    PHR = auto()
    PO = auto()
    TRUNCATED = auto()
    AFFINE = auto()
    POWER = auto()


def as_array(w: ArrayLike) -> np.ndarray:
    return np.asarray(w, dtype=float)


def unwrap(values: np.ndarray) -> Union[float, np.ndarray]:
    """Return a Python float for 0-d results, the array otherwise."""
    if values.ndim == 0:
        return float(values)
    return values


def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """
    Build a PCG64 generator for ``seed``.

    A non-empty ``spawn_key`` derives an independent child stream, so that
    (seed, n, replication) cells are reproducible on their own and in any order.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(spawn_key))
    return np.random.Generator(np.random.PCG64(ss))


class SurvivalModel(ABC):
    """
    Abstract base class for lifetime distributions on [0, inf).

    Abstract Methods:
        cumhazard: H(w) = -ln S(w), nondecreasing, H(0) = 0 for w <= 0
        hazard: h(w) = H'(w)
        to_spec: model grammar string

    Optional Methods:
        inverse_cumhazard: closed-form inverse where one exists
        breakpoints: points where the density has kinks
    """

    family: ClassVar[ModelFamily]

    @abstractmethod
    def cumhazard(self, w: ArrayLike) -> Union[float, np.ndarray]:
        """Cumulative hazard H(w) = -ln S(w); +inf beyond the support."""

    @abstractmethod
    def hazard(self, w: ArrayLike) -> Union[float, np.ndarray]:
        """Hazard rate h(w) = f(w) / S(w)."""

    @abstractmethod
    def to_spec(self) -> str:
        """Model grammar string that parses back to an equal model."""

    # ------------------------------------------------------------------
    # Derived quantities
    # ------------------------------------------------------------------

    def sf(self, w: ArrayLike) -> Union[float, np.ndarray]:
        return unwrap(np.exp(-as_array(self.cumhazard(w))))

    def logsf(self, w: ArrayLike) -> Union[float, np.ndarray]:
        return unwrap(-as_array(self.cumhazard(w)))

    def cdf(self, w: ArrayLike) -> Union[float, np.ndarray]:
        return unwrap(-np.expm1(-as_array(self.cumhazard(w))))

    def pdf(self, w: ArrayLike) -> Union[float, np.ndarray]:
        H = as_array(self.cumhazard(w))
        h = as_array(self.hazard(w))
        with np.errstate(invalid="ignore"):
            f = np.where(np.isinf(H), 0.0, h * np.exp(-H))
        return unwrap(f)

    def logpdf(self, w: ArrayLike) -> Union[float, np.ndarray]:
        H = as_array(self.cumhazard(w))
        h = as_array(self.hazard(w))
        with np.errstate(divide="ignore", invalid="ignore"):
            lf = np.where(np.isinf(H) | (h <= 0), -np.inf, np.log(h) - H)
        return unwrap(lf)

    def inverse_cumhazard(self, h: ArrayLike) -> Union[float, np.ndarray]:
        """
        Solve H(w) = h for w.

        The default brackets the root by doubling and refines with Brent's
        method to ROOT_ABS_TOL; families with a closed form override it.
        """
        targets = as_array(h)
        out = np.array([self._solve_cumhazard(float(x)) for x in targets.ravel()])
        return unwrap(out.reshape(targets.shape))

    def _solve_cumhazard(self, target: float) -> float:
        if target <= 0:
            return 0.0
        if math.isinf(target):
            return self.support_upper
        lo, hi = 0.0, 1.0
        upper = self.support_upper
        if math.isfinite(upper):
            hi = upper
        else:
            while float(self.cumhazard(hi)) < target:
                lo, hi = hi, hi * 2.0
                if hi > 1e300:
                    raise DomainError(
                        "cumulative hazard does not reach target", target=target, model=str(self)
                    )
        return optimize.brentq(
            lambda w: float(self.cumhazard(w)) - target,
            lo,
            hi,
            xtol=C.ROOT_ABS_TOL,
            rtol=C.ROOT_REL_TOL,
            maxiter=C.ROOT_MAX_ITER,
        )

    def quantile(self, q: ArrayLike) -> Union[float, np.ndarray]:
        """Inverse cdf: the w with F(w) = q."""
        return self.inverse_cumhazard(-np.log1p(-as_array(q)))

    def isf(self, p: ArrayLike) -> Union[float, np.ndarray]:
        """Inverse sf, accurate for tail probabilities far below machine epsilon."""
        with np.errstate(divide="ignore"):
            return self.inverse_cumhazard(-np.log(as_array(p)))

    def mean(self) -> float:
        """E[X] = integral of the sf."""
        upper = _finite_upper(self)
        points = [p for p in self.breakpoints() if 0 < p < upper]
        value, _ = integrate.quad(
            self.sf,
            0.0,
            upper,
            points=points or None,
            epsabs=C.DEFAULT_ABS_TOL,
            epsrel=C.DEFAULT_REL_TOL,
            limit=C.DEFAULT_MAX_SUBDIVISIONS,
        )
        return value

    @property
    def support_upper(self) -> float:
        """Right end of the support."""
        return math.inf

    def breakpoints(self) -> Tuple[float, ...]:
        """Points in (0, support_upper) where the density is not smooth."""
        return ()

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        """(k, eta) when H(w) = eta * w**k exactly, else None."""
        return None

    # ------------------------------------------------------------------
    # Sampling
    # ------------------------------------------------------------------

    def draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Inverse-transform draws using an existing generator."""
        # 1 - U lies in (0, 1], so -log is finite
        u = 1.0 - rng.random(n)
        return as_array(self.inverse_cumhazard(-np.log(u)))

    def sample(self, n: int, seed: int) -> np.ndarray:
        return self.draw(n, make_rng(seed))

    def describe(self) -> str:
        return self.to_spec()

    def __str__(self) -> str:
        return self.to_spec()


# ----------------------------------------------------------------------
# Checked module-level entry points
# ----------------------------------------------------------------------


def sf(model: SurvivalModel, w: ArrayLike) -> Union[float, np.ndarray]:
    """Survival function S(w) = P(X > w) for w >= 0."""
    arr = as_array(w)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("survival function is defined for w >= 0", w=w)
    return model.sf(arr)


def quantile(model: SurvivalModel, q: ArrayLike) -> Union[float, np.ndarray]:
    """Quantile function for probabilities strictly inside (0, 1)."""
    arr = as_array(q)
    if np.any(~((arr > 0) & (arr < 1))):
        raise DomainError("quantile probability must lie in (0, 1)", q=q)
    return model.quantile(arr)


def sample(model: SurvivalModel, n: int, seed: int) -> np.ndarray:
    """``n`` inverse-transform draws from a PCG64 stream seeded with ``seed``."""
    if n < 1:
        raise DomainError("sample size must be >= 1", n=n)
    return model.sample(n, seed)


def stochastically_le(
    x: SurvivalModel, y: SurvivalModel, points: int = C.ST_ORDER_GRID_POINTS
) -> bool:
    """
    Grid check of the usual stochastic order X <=_st Y, i.e. S_X <= S_Y.

    The grid is log-spaced up to where both sfs are negligible.
    """
    hi = max(_finite_upper(x), _finite_upper(y))
    grid = np.geomspace(hi * 1e-8, hi, points)
    return bool(np.all(as_array(x.sf(grid)) <= as_array(y.sf(grid)) + C.ST_ORDER_TOL))


def _finite_upper(model: SurvivalModel) -> float:
    upper = model.support_upper
    if math.isfinite(upper):
        return upper
    return float(model.isf(C.DEFAULT_SF_CUT))
