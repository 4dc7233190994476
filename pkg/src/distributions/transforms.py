"""
Model constructors built from other models.

- MixtureHazard: hazard mixture, S(w) = prod S_i(w)**p_i
- PhrTransform: proportional hazards, S(w) = S_base(w)**alpha
- PoTransform: proportional odds, S(w) = alpha S / (1 - (1 - alpha) S)
- TruncatedModel: the base law conditioned on (lower, upper)
- AffineTransform: law of scale * X + shift
- PowerTransform: law of X**power

Each one rewrites the cumulative hazard and inherits everything else.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple
import math

import numpy as np

from src.core import constants as C
from src.core.errors import DomainError
from src.distributions.base import ArrayLike, ModelFamily, SurvivalModel, as_array, unwrap
from src.distributions.families import _fmt, _positive


@dataclass(frozen=True)
class MixtureHazard(SurvivalModel):
    """Weighted sum of component hazards; weights must be positive and sum to one."""

    components: Tuple[Tuple[float, SurvivalModel], ...]
    family = ModelFamily.MIXTURE_HAZARD

    def __post_init__(self) -> None:
        comps = tuple((float(p), m) for p, m in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise DomainError("mixture needs at least one component")
        if any(not p > 0 for p, _ in comps):
            raise DomainError("mixture weights must be > 0", weights=[p for p, _ in comps])
        total = math.fsum(p for p, _ in comps)
        if abs(total - 1.0) > C.MIXTURE_WEIGHT_TOL:
            raise DomainError("mixture weights must sum to 1", total=total)

    @classmethod
    def of(cls, weights: Sequence[float], models: Sequence[SurvivalModel]) -> "MixtureHazard":
        if len(weights) != len(models):
            raise DomainError("weights and models differ in length")
        return cls(tuple(zip(weights, models)))

    @property
    def weights(self) -> Tuple[float, ...]:
        return tuple(p for p, _ in self.components)

    @property
    def models(self) -> Tuple[SurvivalModel, ...]:
        return tuple(m for _, m in self.components)

    def cumhazard(self, w: ArrayLike):
        return unwrap(sum(p * as_array(m.cumhazard(w)) for p, m in self.components))

    def hazard(self, w: ArrayLike):
        return unwrap(sum(p * as_array(m.hazard(w)) for p, m in self.components))

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        forms = [m.weibull_form() for m in self.models]
        if any(f is None for f in forms):
            return None
        shapes = {f[0] for f in forms}
        if len(shapes) != 1:
            return None
        return (shapes.pop(), math.fsum(p * f[1] for p, f in zip(self.weights, forms)))

    def inverse_cumhazard(self, h: ArrayLike):
        form = self.weibull_form()
        if form is None:
            return super().inverse_cumhazard(h)
        k, eta = form
        return unwrap((as_array(h) / eta) ** (1.0 / k))

    @property
    def support_upper(self) -> float:
        return min(m.support_upper for m in self.models)

    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted({b for m in self.models for b in m.breakpoints()}))

    def to_spec(self) -> str:
        inner = ";".join(f"{_fmt(p)}*{m.to_spec()}" for p, m in self.components)
        return f"mix:[{inner}]"


@dataclass(frozen=True)
class PhrTransform(SurvivalModel):
    """S(w) = S_base(w)**alpha."""

    base: SurvivalModel
    alpha: float
    family = ModelFamily.PHR

    def __post_init__(self) -> None:
        _positive("alpha", self.alpha)

    def cumhazard(self, w: ArrayLike):
        return unwrap(self.alpha * as_array(self.base.cumhazard(w)))

    def hazard(self, w: ArrayLike):
        return unwrap(self.alpha * as_array(self.base.hazard(w)))

    def inverse_cumhazard(self, h: ArrayLike):
        return self.base.inverse_cumhazard(as_array(h) / self.alpha)

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        form = self.base.weibull_form()
        if form is None:
            return None
        return (form[0], self.alpha * form[1])

    @property
    def support_upper(self) -> float:
        return self.base.support_upper

    def breakpoints(self) -> Tuple[float, ...]:
        return self.base.breakpoints()

    def to_spec(self) -> str:
        return f"phr:alpha={_fmt(self.alpha)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class PoTransform(SurvivalModel):
    """S(w) = alpha S_base / (1 - (1 - alpha) S_base)."""

    base: SurvivalModel
    alpha: float
    family = ModelFamily.PO

    def __post_init__(self) -> None:
        _positive("alpha", self.alpha)

    def cumhazard(self, w: ArrayLike):
        H = as_array(self.base.cumhazard(w))
        if self.alpha == 1.0:
            return unwrap(H)
        ratio = (1.0 - self.alpha) / self.alpha
        return unwrap(H + np.log1p(ratio * -np.expm1(-H)))

    def hazard(self, w: ArrayLike):
        H = as_array(self.base.cumhazard(w))
        h = as_array(self.base.hazard(w))
        return unwrap(h / (1.0 - (1.0 - self.alpha) * np.exp(-H)))

    def inverse_cumhazard(self, h: ArrayLike):
        target = as_array(h)
        with np.errstate(invalid="ignore"):
            base_target = target + np.log(self.alpha + (1.0 - self.alpha) * np.exp(-target))
        return self.base.inverse_cumhazard(np.where(np.isinf(target), np.inf, base_target))

    @property
    def support_upper(self) -> float:
        return self.base.support_upper

    def breakpoints(self) -> Tuple[float, ...]:
        return self.base.breakpoints()

    def to_spec(self) -> str:
        return f"po:alpha={_fmt(self.alpha)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class TruncatedModel(SurvivalModel):
    """The base law conditioned on lower < X < upper."""

    base: SurvivalModel
    lower: float
    upper: float
    family = ModelFamily.TRUNCATED

    def __post_init__(self) -> None:
        if not (0.0 <= self.lower < self.upper):
            raise DomainError(
                "truncation requires 0 <= lower < upper", lower=self.lower, upper=self.upper
            )
        if not float(self.base.cumhazard(self.lower)) < self._upper_cumhazard():
            raise DomainError("base model has no mass on the truncation interval")

    def _upper_cumhazard(self) -> float:
        if math.isinf(self.upper):
            return math.inf
        return float(self.base.cumhazard(self.upper))

    def _log_tail_gap(self, H: np.ndarray) -> np.ndarray:
        # log(1 - S(upper)/S(w)) for H = H_base(w)
        Hb = self._upper_cumhazard()
        with np.errstate(divide="ignore"):
            return np.log(-np.expm1(H - Hb))

    def cumhazard(self, w: ArrayLike):
        x = as_array(w)
        inside = np.clip(x, self.lower, self.upper)
        Ha = float(self.base.cumhazard(self.lower))
        H = as_array(self.base.cumhazard(inside))
        with np.errstate(invalid="ignore"):
            HT = (H - Ha) - self._log_tail_gap(H) + self._log_tail_gap(np.asarray(Ha))
        HT = np.where(x <= self.lower, 0.0, np.where(x >= self.upper, np.inf, HT))
        return unwrap(HT)

    def hazard(self, w: ArrayLike):
        x = as_array(w)
        inside = np.clip(x, self.lower, self.upper)
        H = as_array(self.base.cumhazard(inside))
        h = as_array(self.base.hazard(inside))
        with np.errstate(divide="ignore", invalid="ignore"):
            hT = h / np.exp(self._log_tail_gap(H))
        return unwrap(np.where((x > self.lower) & (x < self.upper), hT, 0.0))

    def inverse_cumhazard(self, h: ArrayLike):
        target = as_array(h)
        Ha = float(self.base.cumhazard(self.lower))
        Hb = self._upper_cumhazard()
        p = np.exp(-target)
        # S_base(w) = p S(lower) + (1 - p) S(upper)
        with np.errstate(divide="ignore"):
            base_target = Ha - np.log(p + (1.0 - p) * math.exp(Ha - Hb))
        w = as_array(self.base.inverse_cumhazard(base_target))
        return unwrap(np.clip(w, self.lower, self.upper))

    @property
    def support_upper(self) -> float:
        return float(self.upper)

    def breakpoints(self) -> Tuple[float, ...]:
        inner = [b for b in self.base.breakpoints() if self.lower < b < self.upper]
        edges = [self.lower] if self.lower > 0 else []
        if math.isfinite(self.upper):
            edges.append(self.upper)
        return tuple(sorted(set(edges + inner)))

    def to_spec(self) -> str:
        return f"trunc:a={_fmt(self.lower)},b={_fmt(self.upper)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class AffineTransform(SurvivalModel):
    """Law of scale * X + shift."""

    base: SurvivalModel
    scale: float
    shift: float = 0.0
    family = ModelFamily.AFFINE

    def __post_init__(self) -> None:
        _positive("scale", self.scale)
        if not (math.isfinite(self.shift) and self.shift >= 0):
            raise DomainError("shift must be a finite value >= 0", shift=self.shift)

    def _pre(self, w: ArrayLike) -> np.ndarray:
        return np.maximum((as_array(w) - self.shift) / self.scale, 0.0)

    def cumhazard(self, w: ArrayLike):
        return self.base.cumhazard(self._pre(w))

    def hazard(self, w: ArrayLike):
        x = as_array(w)
        h = as_array(self.base.hazard(self._pre(x))) / self.scale
        return unwrap(np.where(x > self.shift, h, 0.0))

    def inverse_cumhazard(self, h: ArrayLike):
        return unwrap(self.scale * as_array(self.base.inverse_cumhazard(h)) + self.shift)

    @property
    def support_upper(self) -> float:
        return self.scale * self.base.support_upper + self.shift

    def breakpoints(self) -> Tuple[float, ...]:
        mapped = [self.scale * b + self.shift for b in self.base.breakpoints()]
        if self.shift > 0:
            mapped.append(self.shift)
        return tuple(sorted(set(mapped)))

    def to_spec(self) -> str:
        return f"affine:a={_fmt(self.scale)},b={_fmt(self.shift)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class PowerTransform(SurvivalModel):
    """Law of X**power for power > 0."""

    base: SurvivalModel
    power: float
    family = ModelFamily.POWER

    def __post_init__(self) -> None:
        _positive("power", self.power)

    def _pre(self, w: ArrayLike) -> np.ndarray:
        return np.maximum(as_array(w), 0.0) ** (1.0 / self.power)

    def cumhazard(self, w: ArrayLike):
        return self.base.cumhazard(self._pre(w))

    def hazard(self, w: ArrayLike):
        x = np.maximum(as_array(w), 0.0)
        inv = 1.0 / self.power
        with np.errstate(divide="ignore", invalid="ignore"):
            jac = inv * x ** (inv - 1.0)
        return unwrap(as_array(self.base.hazard(self._pre(x))) * jac)

    def inverse_cumhazard(self, h: ArrayLike):
        return unwrap(as_array(self.base.inverse_cumhazard(h)) ** self.power)

    def weibull_form(self) -> Optional[Tuple[float, float]]:
        form = self.base.weibull_form()
        if form is None:
            return None
        return (form[0] / self.power, form[1])

    @property
    def support_upper(self) -> float:
        return self.base.support_upper**self.power

    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(b**self.power for b in self.base.breakpoints())

    def to_spec(self) -> str:
        return f"power:p={_fmt(self.power)},base={self.base.to_spec()}"
