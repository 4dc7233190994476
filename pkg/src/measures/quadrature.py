"""
Adaptive quadrature on [t, inf) for survival-weighted integrands.

The semi-infinite range is cut at an upper limit U where every supplied model's
conditional sf has fallen below ``sf_cut``; the finite range is handed to
QUADPACK (scipy.integrate.quad) with breakpoints at a few sf levels so that
the bulk of the mass sits in its own panels. A tail estimate g(U)/kappa from
the local log-decay rate decides whether U must be pushed further out; if it
never settles the integral is reported as divergent.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence
import logging
import math

import numpy as np
from scipy import integrate

from src.core import constants as C
from src.core.config import IntegrationConfig
from src.core.errors import DivergenceError, IntegrationFailure
from src.distributions.base import SurvivalModel

logger = logging.getLogger(__name__)

Integrand = Callable[[float], float]


@dataclass
class QuadratureResult:
    """Value and diagnostics of one adaptive integration."""

    value: float
    error: float
    subdivisions: int
    upper: float
    tail_extensions: int = 0


def adaptive_quad(
    func: Integrand,
    lo: float,
    hi: float,
    config: IntegrationConfig,
    points: Optional[Sequence[float]] = None,
) -> QuadratureResult:
    """
    Integrate ``func`` over the finite range [lo, hi].

    Raises:
        DivergenceError: QUADPACK flags the integral as divergent
        IntegrationFailure: tolerance not reached within max_subdivisions
    """
    if hi <= lo:
        return QuadratureResult(0.0, 0.0, 0, hi)
    inner = sorted({p for p in (points or ()) if lo < p < hi})
    out = integrate.quad(
        func,
        lo,
        hi,
        epsabs=config.abs_tol,
        epsrel=config.rel_tol,
        limit=config.max_subdivisions,
        points=inner or None,
        full_output=1,
    )
    value, error, info = out[0], out[1], out[2]
    message = out[3] if len(out) > 3 else None
    subdivisions = int(info.get("last", 0)) if isinstance(info, dict) else 0

    if not (math.isfinite(value) and math.isfinite(error)):
        raise IntegrationFailure(
            "quadrature produced a non-finite value",
            value=value,
            error=error,
            subdivisions=subdivisions,
            lower=lo,
            upper=hi,
        )
    if message is not None:
        tolerance = max(config.abs_tol, config.rel_tol * abs(value))
        if "diverg" in str(message):
            raise DivergenceError(
                "integral is probably divergent",
                value=value,
                error=error,
                subdivisions=subdivisions,
                lower=lo,
                upper=hi,
            )
        if error > tolerance:
            raise IntegrationFailure(
                "quadrature did not reach tolerance",
                value=value,
                error=error,
                tolerance=tolerance,
                subdivisions=subdivisions,
                lower=lo,
                upper=hi,
                reason=str(message),
            )
        logger.debug(f"quad reported {message!r} but error {error:.3g} is within tolerance")
    return QuadratureResult(value, error, subdivisions, hi)


def conditional_isf(model: SurvivalModel, level: float, t: float = 0.0) -> float:
    """The w > t with S(w) / S(t) = level."""
    Ht = float(model.cumhazard(t)) if t > 0 else 0.0
    return float(model.inverse_cumhazard(Ht - math.log(level)))


def upper_limit(
    models: Iterable[SurvivalModel], config: IntegrationConfig, t: float = 0.0
) -> float:
    """Smallest w beyond which every model's conditional sf is below ``sf_cut``."""
    return max(conditional_isf(m, config.sf_cut, t) for m in models)


def panel_points(models: Iterable[SurvivalModel], t: float, upper: float) -> List[float]:
    """Breakpoints at fixed conditional sf levels plus every model kink in (t, upper)."""
    pts = set()
    for m in models:
        pts.update(m.breakpoints())
        for level in C.BREAKPOINT_SF_LEVELS:
            pts.add(conditional_isf(m, level, t))
    return sorted(p for p in pts if t < p < upper and math.isfinite(p))


def _tail_estimate(func: Integrand, upper: float) -> float:
    """g(U)/kappa with kappa the local log-decay rate; inf if g is not decaying."""
    g0 = abs(func(upper))
    if g0 == 0.0:
        return 0.0
    h = max(upper * 1e-3, 1e-6)
    g1 = abs(func(upper + h))
    if not (math.isfinite(g0) and math.isfinite(g1)) or g1 >= g0:
        return math.inf
    if g1 == 0.0:
        return g0 * h
    kappa = (math.log(g0) - math.log(g1)) / h
    return g0 / kappa


def integrate_from(
    func: Integrand,
    models: Sequence[SurvivalModel],
    config: IntegrationConfig,
    lower: float = 0.0,
    support_upper: float = math.inf,
) -> QuadratureResult:
    """
    Integrate ``func`` over [lower, inf).

    Args:
        func: integrand, expected to decay like the sfs of ``models``
        models: models whose conditional sf levels place U and the breakpoints
        config: quadrature tolerances
        lower: left end of the range (the inspection time t)
        support_upper: point beyond which ``func`` vanishes identically

    Returns:
        QuadratureResult carrying the total value, summed error estimate,
        subdivisions over all panels and the final upper truncation.
    """
    upper = min(upper_limit(models, config, lower), support_upper)
    points = panel_points(models, lower, upper)
    result = adaptive_quad(func, lower, upper, config, points)
    value, error, subdivisions = result.value, result.error, result.subdivisions

    extensions = 0
    if math.isfinite(support_upper) and upper >= support_upper:
        tail = 0.0
    else:
        tail = _tail_estimate(func, upper)
    while tail > max(config.abs_tol, config.rel_tol * abs(value)):
        if extensions >= C.TAIL_EXTENSIONS_MAX:
            raise DivergenceError(
                "integrand does not decay beyond the truncation point",
                value=value,
                upper=upper,
                tail_estimate=tail,
                extensions=extensions,
            )
        new_upper = min(upper * C.TAIL_EXTENSION_FACTOR, support_upper)
        piece = adaptive_quad(func, upper, new_upper, config)
        value += piece.value
        error += piece.error
        subdivisions += piece.subdivisions
        upper = new_upper
        extensions += 1
        logger.debug(f"tail extension {extensions}: upper={upper:.6g} value={value:.12g}")
        if math.isfinite(support_upper) and upper >= support_upper:
            tail = 0.0
            break
        tail = _tail_estimate(func, upper)

    # residual mass beyond the final truncation point
    error += tail
    return QuadratureResult(value, error, subdivisions, upper, extensions)


def grid_oracle(func: Integrand, lo: float, hi: float, points: int = 20001) -> float:
    """
    Composite Simpson value on a fixed grid, an independent cross-check for quad.

    The grid is uniform in s = ln(w - lo), which turns the power-type
    singularities at ``lo`` into smooth, exponentially small contributions.
    """
    s = np.linspace(math.log((hi - lo) * 1e-14), math.log(hi - lo), points)
    offsets = np.exp(s)
    values = np.array([func(lo + d) for d in offsets]) * offsets
    return float(integrate.simpson(values, x=s))
