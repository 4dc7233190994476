"""
Closed-form lifetime families.

Weibull is parameterized directly through its survival function
S(w) = exp(-eta * w**k), so eta is a rate-like constant rather than a scale.
Rayleigh uses S(w) = exp(-(b*w)**2) and GammaShape2 is the gamma law with
shape 2 and unit rate, S(w) = (1 + w) exp(-w).
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import math
import numbers

import numpy as np
from scipy import special

from src.core.errors import DomainError
from src.distributions.base import ArrayLike, ModelFamily, SurvivalModel, as_array, unwrap


def _fmt(x: float) -> str:
    return repr(float(x))


def _positive(name: str, value: float) -> None:
    if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a finite value > 0", **{name: value})


def _clip(w: ArrayLike) -> np.ndarray:
    return np.maximum(as_array(w), 0.0)


@dataclass(frozen=True)
class Exponential(SurvivalModel):
    """Constant hazard ``rate``."""

    rate: float
    family = ModelFamily.EXPONENTIAL

    def __post_init__(self) -> None:
        _positive("rate", self.rate)

    def cumhazard(self, w: ArrayLike):
        return unwrap(self.rate * _clip(w))

    def hazard(self, w: ArrayLike):
        return unwrap(np.full_like(as_array(w), self.rate))

    def inverse_cumhazard(self, h: ArrayLike):
        return unwrap(as_array(h) / self.rate)

    def mean(self) -> float:
        return 1.0 / self.rate

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        return (1.0, float(self.rate))

    def to_spec(self) -> str:
        return f"exp:rate={_fmt(self.rate)}"


@dataclass(frozen=True)
class Weibull(SurvivalModel):
    """S(w) = exp(-eta * w**k)."""

    k: float
    eta: float
    family = ModelFamily.WEIBULL

    def __post_init__(self) -> None:
        _positive("k", self.k)
        _positive("eta", self.eta)

    def cumhazard(self, w: ArrayLike):
        return unwrap(self.eta * _clip(w) ** self.k)

    def hazard(self, w: ArrayLike):
        with np.errstate(divide="ignore"):
            return unwrap(self.eta * self.k * _clip(w) ** (self.k - 1.0))

    def inverse_cumhazard(self, h: ArrayLike):
        return unwrap((as_array(h) / self.eta) ** (1.0 / self.k))

    def mean(self) -> float:
        return math.gamma(1.0 + 1.0 / self.k) * self.eta ** (-1.0 / self.k)

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        return (float(self.k), float(self.eta))

    def to_spec(self) -> str:
        return f"weibull:k={_fmt(self.k)},eta={_fmt(self.eta)}"


@dataclass(frozen=True)
class Rayleigh(SurvivalModel):
    """S(w) = exp(-(b*w)**2)."""

    b: float
    family = ModelFamily.RAYLEIGH

    def __post_init__(self) -> None:
        _positive("b", self.b)

    def cumhazard(self, w: ArrayLike):
        return unwrap((self.b * _clip(w)) ** 2)

    def hazard(self, w: ArrayLike):
        return unwrap(2.0 * self.b**2 * _clip(w))

    def inverse_cumhazard(self, h: ArrayLike):
        return unwrap(np.sqrt(as_array(h)) / self.b)

    def mean(self) -> float:
        return math.sqrt(math.pi) / (2.0 * self.b)

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        return (2.0, float(self.b) ** 2)

    def to_spec(self) -> str:
        return f"rayleigh:b={_fmt(self.b)}"


@dataclass(frozen=True)
class GammaShape2(SurvivalModel):
    """Gamma(shape 2, rate 1): S(w) = (1 + w) exp(-w)."""

    family = ModelFamily.GAMMA_SHAPE2

    def cumhazard(self, w: ArrayLike):
        x = _clip(w)
        with np.errstate(invalid="ignore"):
            H = np.where(np.isinf(x), np.inf, x - np.log1p(x))
        return unwrap(H)

    def hazard(self, w: ArrayLike):
        x = _clip(w)
        return unwrap(x / (1.0 + x))

    def inverse_cumhazard(self, h: ArrayLike):
        # (1 + w) e^{-(1 + w)} = e^{-(h + 1)} is solved by the lower real branch of W
        target = as_array(h)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            w = -special.lambertw(-np.exp(-(target + 1.0)), k=-1).real - 1.0
            w = np.where(np.isinf(target), np.inf, np.maximum(w, 0.0))
            # one Newton step on w - log1p(w) = h removes the branch-point rounding
            step = (w - np.log1p(w) - target) * (1.0 + w) / w
            w = np.where((w > 0) & np.isfinite(w), w - step, w)
        return unwrap(np.maximum(w, 0.0))

    def mean(self) -> float:
        return 2.0

    def to_spec(self) -> str:
        return "gamma2"
