"""
The WFGCRI measure family by adaptive quadrature.

Every measure here is a special case of one integral,

    K = 1/Gamma(beta+1) * int_t^inf psi(w) [S_X(w)/S_X(t)] [-ln(S_Y(w)/S_Y(t))]^beta dw

with t = 0 for the static measures:

    wfgcri     psi, beta free, t = 0
    dwfgcri    psi, beta, t free
    wcri       beta = 1
    wfgcre     X = Y
    fgcre      X = Y, psi = 1
    fgcri      psi = 1
    cri        beta = 1, psi = 1
    cre        X = Y, beta = 1, psi = 1

The integrand is evaluated in log space from the cumulative hazards, so the
conditional sfs never underflow before they are multiplied out. For beta > 0
the convention 0**beta = 0 applies where -ln S_Y vanishes; for beta = 0 the
factor is identically 1.

Usage:
    from src.measures import MeasureRequest, WeightSpec, wfgcri
    from src.distributions import Exponential

    req = MeasureRequest(Exponential(2.5), Exponential(3.5), beta=0.5, weight=WeightSpec(1))
    wfgcri(req).value  # 0.283972...
"""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import logging
import math

from scipy import special

from src.core import constants as C
from src.core.config import IntegrationConfig
from src.core.errors import ConditioningError, DivergenceError, DomainError
from src.distributions.base import SurvivalModel
from src.distributions.transforms import PhrTransform, PoTransform
from src.measures.quadrature import QuadratureResult, integrate_from
from src.measures.weights import WeightSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeasureRequest:
    """True model S_X, reference model S_Y, order beta, weight psi and optional time t."""

    true_model: SurvivalModel
    ref_model: SurvivalModel
    beta: float = 1.0
    weight: WeightSpec = field(default_factory=WeightSpec)
    t: Optional[float] = None
    integration: IntegrationConfig = field(default_factory=IntegrationConfig)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise DomainError("beta must be a finite value >= 0", beta=self.beta)
        if self.beta > C.MAX_BETA:
            raise DomainError(f"beta above {C.MAX_BETA} is not supported", beta=self.beta)
        if self.t is not None and not (math.isfinite(self.t) and self.t >= 0):
            raise DomainError("inspection time t must be a finite value >= 0", t=self.t)

    def describe(self) -> str:
        parts = [
            f"X={self.true_model.to_spec()}",
            f"Y={self.ref_model.to_spec()}",
            f"beta={self.beta:g}",
            f"psi={self.weight}",
        ]
        if self.t is not None:
            parts.append(f"t={self.t:g}")
        return " ".join(parts)


@dataclass
class MeasureResult:
    """A measure value with its quadrature diagnostics."""

    value: float
    upper_truncation: float
    err_estimate: float
    subdivisions: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "upper_truncation": self.upper_truncation,
            "err_estimate": self.err_estimate,
            "subdivisions": self.subdivisions,
        }


def _conditioning(model: SurvivalModel, t: float, role: str) -> float:
    if t == 0:
        return 0.0
    Ht = float(model.cumhazard(t))
    if not math.isfinite(Ht):
        raise ConditioningError(
            f"{role} survival function vanishes at t", t=t, model=model.to_spec()
        )
    return Ht


def _integrand(
    x: SurvivalModel,
    y: SurvivalModel,
    beta: float,
    weight: WeightSpec,
    hx_t: float,
    hy_t: float,
) -> Callable[[float], float]:
    """psi(w) * S_X(w)/S_X(t) * (-ln S_Y(w)/S_Y(t))**beta, without the Gamma factor."""

    def g(w: float) -> float:
        dhx = float(x.cumhazard(w)) - hx_t
        if not dhx < math.inf:
            return 0.0
        log_value = -dhx
        if weight.exponent:
            if w <= 0:
                return 0.0
            log_value += weight.log(w)
        if beta:
            dhy = float(y.cumhazard(w)) - hy_t
            if dhy <= 0:
                return 0.0
            if dhy == math.inf:
                return math.inf
            log_value += beta * math.log(dhy)
        return math.exp(log_value)

    return g


def _evaluate(
    x: SurvivalModel,
    y: SurvivalModel,
    beta: float,
    weight: WeightSpec,
    t: float,
    config: IntegrationConfig,
) -> MeasureResult:
    hx_t = _conditioning(x, t, "true-model")
    hy_t = _conditioning(y, t, "reference-model")

    y_end = y.support_upper
    if beta > 0 and math.isfinite(y_end) and y_end > t:
        if float(x.cumhazard(y_end)) < math.inf:
            raise DivergenceError(
                "true model has mass beyond the reference support; -ln S_Y is infinite there",
                ref_support_upper=y_end,
            )

    g = _integrand(x, y, beta, weight, hx_t, hy_t)
    q: QuadratureResult = integrate_from(g, (x, y), config, lower=t, support_upper=x.support_upper)
    norm = math.exp(special.gammaln(beta + 1.0))
    logger.debug(
        f"measure beta={beta:g} c={weight.exponent:g} t={t:g}: raw={q.value:.12g} "
        f"U={q.upper:.6g} subdivisions={q.subdivisions} extensions={q.tail_extensions}"
    )
    return MeasureResult(
        value=max(q.value, 0.0) / norm,
        upper_truncation=q.upper,
        err_estimate=q.error / norm,
        subdivisions=q.subdivisions,
    )


# =============================================================================
# Core measures
# =============================================================================


def wfgcri(req: MeasureRequest) -> MeasureResult:
    """
    Weighted fractional generalized cumulative residual inaccuracy.

    Raises:
        DomainError: the request carries an inspection time (use dwfgcri)
        IntegrationFailure: quadrature did not converge
        DivergenceError: the integral does not converge
    """
    if req.t is not None:
        raise DomainError("wfgcri is the static measure; use dwfgcri for t", t=req.t)
    return _evaluate(req.true_model, req.ref_model, req.beta, req.weight, 0.0, req.integration)


def dwfgcri(req: MeasureRequest) -> MeasureResult:
    """
    Dynamic WFGCRI of the residual lifetimes at inspection time t.

    Raises:
        DomainError: no inspection time given
        ConditioningError: S_X(t) = 0 or S_Y(t) = 0
    """
    if req.t is None:
        raise DomainError("dwfgcri needs an inspection time t")
    return _evaluate(req.true_model, req.ref_model, req.beta, req.weight, req.t, req.integration)


def _time_or_zero(req: MeasureRequest) -> MeasureRequest:
    return req if req.t is not None else replace(req, t=0.0)


def dwfgcri_phr(req: MeasureRequest, alpha: float) -> MeasureResult:
    """DWFGCRI between the proportional-hazards models S_X**alpha and S_Y**alpha."""
    req = _time_or_zero(req)
    return dwfgcri(
        replace(
            req,
            true_model=PhrTransform(req.true_model, alpha),
            ref_model=PhrTransform(req.ref_model, alpha),
        )
    )


def dwfgcri_po(req: MeasureRequest, alpha: float) -> MeasureResult:
    """DWFGCRI between the proportional-odds models built from S_X and S_Y."""
    req = _time_or_zero(req)
    return dwfgcri(
        replace(
            req,
            true_model=PoTransform(req.true_model, alpha),
            ref_model=PoTransform(req.ref_model, alpha),
        )
    )


# =============================================================================
# Catalogue of special cases
# =============================================================================


def _config(config: Optional[IntegrationConfig]) -> IntegrationConfig:
    return config if config is not None else IntegrationConfig()


def wcri(
    x: SurvivalModel,
    y: SurvivalModel,
    weight: WeightSpec = WeightSpec(1.0),
    config: Optional[IntegrationConfig] = None,
) -> float:
    """Weighted cumulative residual inaccuracy, -int psi S_X ln S_Y."""
    return wfgcri(MeasureRequest(x, y, 1.0, weight, integration=_config(config))).value


def cri(x: SurvivalModel, y: SurvivalModel, config: Optional[IntegrationConfig] = None) -> float:
    return wcri(x, y, WeightSpec(0.0), config)


def fgcri(
    x: SurvivalModel, y: SurvivalModel, beta: float, config: Optional[IntegrationConfig] = None
) -> float:
    """Unweighted fractional generalized cumulative residual inaccuracy."""
    return wfgcri(MeasureRequest(x, y, beta, WeightSpec(0.0), integration=_config(config))).value


def wfgcre(
    x: SurvivalModel,
    beta: float,
    weight: WeightSpec = WeightSpec(1.0),
    config: Optional[IntegrationConfig] = None,
) -> float:
    """Weighted fractional generalized cumulative residual entropy (X against itself)."""
    return wfgcri(MeasureRequest(x, x, beta, weight, integration=_config(config))).value


def fgcre(x: SurvivalModel, beta: float, config: Optional[IntegrationConfig] = None) -> float:
    return wfgcre(x, beta, WeightSpec(0.0), config)


def cre(x: SurvivalModel, config: Optional[IntegrationConfig] = None) -> float:
    """Cumulative residual entropy, -int S ln S."""
    return wfgcre(x, 1.0, WeightSpec(0.0), config)


def shannon_entropy_result(
    model: SurvivalModel, config: Optional[IntegrationConfig] = None
) -> MeasureResult:
    config = _config(config)

    def g(w: float) -> float:
        f = float(model.pdf(w))
        if f <= 0.0 or not math.isfinite(f):
            return 0.0
        return -f * float(model.logpdf(w))

    q = integrate_from(g, (model,), config, lower=0.0, support_upper=model.support_upper)
    return MeasureResult(q.value, q.upper, q.error, q.subdivisions)


def shannon_entropy(model: SurvivalModel, config: Optional[IntegrationConfig] = None) -> float:
    """Differential entropy -int f ln f."""
    return shannon_entropy_result(model, config).value


# =============================================================================
# Dispatch and curves
# =============================================================================

MEASURE_NAMES: Tuple[str, ...] = (
    "wfgcri",
    "dwfgcri",
    "dwfgcri-phr",
    "dwfgcri-po",
    "cre",
    "cri",
    "wcri",
    "fgcre",
    "fgcri",
    "wfgcre",
    "shannon",
)


def compute(name: str, req: MeasureRequest, alpha: Optional[float] = None) -> MeasureResult:
    """
    Evaluate a measure by its selection name.

    Measures that ignore parts of the request (the reference model for entropies,
    beta for the beta = 1 measures, psi for the unweighted ones) override them.
    """
    x, y = req.true_model, req.ref_model
    if name in ("dwfgcri-phr", "dwfgcri-po") and alpha is None:
        raise DomainError(f"{name} requires alpha")
    if name == "wfgcri":
        return wfgcri(req)
    if name == "dwfgcri":
        return dwfgcri(_time_or_zero(req))
    if name == "dwfgcri-phr":
        return dwfgcri_phr(req, alpha)
    if name == "dwfgcri-po":
        return dwfgcri_po(req, alpha)
    if name == "shannon":
        return shannon_entropy_result(x, req.integration)

    static = replace(req, t=None)
    if name == "cre":
        static = replace(static, ref_model=x, beta=1.0, weight=WeightSpec(0.0))
    elif name == "cri":
        static = replace(static, beta=1.0, weight=WeightSpec(0.0))
    elif name == "wcri":
        static = replace(static, beta=1.0)
    elif name == "fgcre":
        static = replace(static, ref_model=x, weight=WeightSpec(0.0))
    elif name == "fgcri":
        static = replace(static, weight=WeightSpec(0.0))
    elif name == "wfgcre":
        static = replace(static, ref_model=x)
    else:
        raise DomainError(f"unknown measure {name!r}", choices=list(MEASURE_NAMES))
    return wfgcri(static)


def measure_curve(
    name: str,
    req: MeasureRequest,
    axis: str,
    grid: Sequence[float],
    alpha: Optional[float] = None,
) -> List[Tuple[float, float]]:
    """
    Values of a measure along a grid of beta or t values.

    Args:
        name: measure selection name (see MEASURE_NAMES)
        req: base request; the swept field is replaced at each grid point
        axis: "beta" or "t"
        grid: values to sweep
        alpha: PHR/PO parameter where the measure needs one

    Returns:
        List of (grid value, measure value) pairs in grid order.
    """
    if axis not in ("beta", "t"):
        raise DomainError(f"curve axis must be 'beta' or 't', got {axis!r}")
    rows = []
    for value in grid:
        point = replace(req, **{axis: float(value)})
        rows.append((float(value), compute(name, point, alpha).value))
    return rows
