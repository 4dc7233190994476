"""
Analytic values for Weibull-class pairs.

For H_X(w) = eta1 w**k and H_Y(w) = eta2 w**k (exponential, Weibull and
Rayleigh models, PHR transforms of them and hazard mixtures of equal-shape
members all have this form) and psi(w) = w**c,

    K = eta2**beta Gamma(beta + (c+1)/k) / (k Gamma(beta+1) eta1**(beta + (c+1)/k)).

The dynamic measure has a closed form when c = k - 1, where it equals
eta2**beta / (k eta1**(beta+1)) for every t, and when k = 1 with integer c,
by binomial expansion of (t + u)**c.
"""

from typing import Optional
import logging
import math

from scipy import special

from src.distributions.base import SurvivalModel
from src.measures.weights import WeightSpec

logger = logging.getLogger(__name__)

_SHAPE_TOL = 1e-12


def wfgcri_closed_form_exp(lam1: float, lam2: float, beta: float, c: float) -> Optional[float]:
    """
    WFGCRI of Exp(lam1) against Exp(lam2) with psi(w) = w**c.

    Returns:
        Gamma(beta+c+1)/Gamma(beta+1) * lam2**beta / lam1**(beta+c+1),
        or None when the arguments are outside the formula's domain.
    """
    if not (lam1 > 0 and lam2 > 0 and beta >= 0 and c >= 0):
        return None
    log_value = (
        special.gammaln(beta + c + 1.0)
        - special.gammaln(beta + 1.0)
        + beta * math.log(lam2)
        - (beta + c + 1.0) * math.log(lam1)
    )
    return math.exp(log_value)


def _static(k: float, eta1: float, eta2: float, beta: float, c: float) -> float:
    a = beta + (c + 1.0) / k
    log_value = (
        beta * math.log(eta2)
        + special.gammaln(a)
        - math.log(k)
        - special.gammaln(beta + 1.0)
        - a * math.log(eta1)
    )
    return math.exp(log_value)


def _dynamic_exponential(lam1: float, lam2: float, beta: float, c: int, t: float) -> float:
    total = math.fsum(
        math.comb(c, j)
        * t ** (c - j)
        * math.exp(special.gammaln(beta + j + 1.0) - (beta + j + 1.0) * math.log(lam1))
        for j in range(c + 1)
    )
    return lam2**beta * total / math.gamma(beta + 1.0)


def closed_form(
    true_model: SurvivalModel,
    ref_model: SurvivalModel,
    beta: float,
    weight: WeightSpec,
    t: Optional[float] = None,
) -> Optional[float]:
    """
    Analytic (D)WFGCRI for Weibull-class pairs of equal shape, None otherwise.

    Args:
        true_model: S_X
        ref_model: S_Y
        beta: fractional order
        weight: power weight
        t: inspection time for the dynamic measure, None for the static one
    """
    fx, fy = true_model.weibull_form(), ref_model.weibull_form()
    if fx is None or fy is None or abs(fx[0] - fy[0]) > _SHAPE_TOL * fx[0]:
        return None
    k, eta1 = fx
    eta2 = fy[1]
    c = weight.exponent

    if not t:
        return _static(k, eta1, eta2, beta, c)
    if abs(c - (k - 1.0)) <= _SHAPE_TOL:
        return eta2**beta / (k * eta1 ** (beta + 1.0))
    if abs(k - 1.0) <= _SHAPE_TOL and float(c).is_integer():
        return _dynamic_exponential(eta1, eta2, beta, int(c), t)
    logger.debug(f"no closed form for k={k:g}, c={c:g}, t={t:g}")
    return None


def phr_study_true_value(rate: float, alpha: float, beta: float, c: float = 1.0) -> float:
    """WFGCRI of Exp(rate) against its PHR transform S**alpha."""
    return alpha**beta * wfgcri_closed_form_exp(rate, rate, beta, c)


def two_sample_true_value(true_rate: float, ref_rate: float, beta: float, c: float = 1.0) -> float:
    return wfgcri_closed_form_exp(true_rate, ref_rate, beta, c)
