"""
Randomized property runs over the inequality checks.

Configurations are drawn from exponential, Weibull and Rayleigh models with
beta uniform on [beta_min, beta_max] and the weight exponent from a fixed
list. Checks that need a stochastic order draw ordered pairs within one
family most of the time and an arbitrary cross-family pair otherwise, so that
the premise detection path is exercised as well. Every configuration is
reproducible on its own from (seed, theorem, index).
"""

from typing import Callable, Dict, List, Optional
import logging

import numpy as np

from src.core.config import IntegrationConfig, VerifyConfig
from src.distributions.base import SurvivalModel, make_rng
from src.distributions.families import Exponential, Rayleigh, Weibull
from src.distributions.transforms import TruncatedModel
from src.measures.inaccuracy import MeasureRequest
from src.measures.weights import WeightSpec
from src.theory.bounds import (
    BoundCheck,
    CheckStatus,
    TheoremId,
    check_finite_support_bounds_T2_7,
    check_lower_bound_T2_1,
    check_mixture_bound_T2_9,
    check_monotonicity_T2_3_T2_4,
    check_phr_scaling_T3_2,
    check_stochastic_order_bounds,
    check_weight_power_bound_T2_8,
)

logger = logging.getLogger(__name__)

CROSS_FAMILY_SHARE = 0.2
FAMILIES = ("exp", "weibull", "rayleigh")


def _model(family: str, shape: float, rate: float) -> SurvivalModel:
    if family == "exp":
        return Exponential(rate)
    if family == "weibull":
        return Weibull(shape, rate)
    return Rayleigh(float(np.sqrt(rate)))


def random_model(rng: np.random.Generator) -> SurvivalModel:
    family = FAMILIES[rng.integers(len(FAMILIES))]
    return _model(family, float(rng.uniform(0.8, 3.0)), float(rng.uniform(0.5, 3.0)))


def ordered_models(rng: np.random.Generator, count: int) -> List[SurvivalModel]:
    """
    ``count`` models, stochastically increasing within one family; with
    probability CROSS_FAMILY_SHARE an unordered cross-family list instead.
    """
    if rng.random() < CROSS_FAMILY_SHARE:
        return [random_model(rng) for _ in range(count)]
    family = FAMILIES[rng.integers(len(FAMILIES))]
    shape = float(rng.uniform(0.8, 3.0))
    # larger hazard constant means a smaller sf
    rates = sorted(rng.uniform(0.5, 3.0, size=count), reverse=True)
    return [_model(family, shape, float(r)) for r in rates]


def _beta(rng: np.random.Generator, config: VerifyConfig) -> float:
    return float(rng.uniform(config.beta_min, config.beta_max))


def _weight(rng: np.random.Generator, config: VerifyConfig) -> WeightSpec:
    return WeightSpec(float(config.weight_exponents[rng.integers(len(config.weight_exponents))]))


# =============================================================================
# One generator per theorem
# =============================================================================


def _t2_1(variant: str):
    def run(rng, config, integration) -> List[BoundCheck]:
        req = MeasureRequest(
            random_model(rng), random_model(rng), _beta(rng, config), _weight(rng, config),
            integration=integration,
        )
        return [check_lower_bound_T2_1(req, variant, config.margin_rel)]

    return run


def _t2_2(rng, config, integration) -> List[BoundCheck]:
    x, y = ordered_models(rng, 2)
    direction = "X_le_st_Y"
    if rng.random() < 0.5:
        x, y, direction = y, x, "X_ge_st_Y"
    return [
        check_stochastic_order_bounds(
            x, y, _beta(rng, config), _weight(rng, config), direction, integration,
            config.margin_rel,
        )
    ]


def _t2_3_4(rng, config, integration) -> List[BoundCheck]:
    x, y, z = ordered_models(rng, 3)
    return check_monotonicity_T2_3_T2_4(
        (x, y, z), _beta(rng, config), _weight(rng, config), integration, config.margin_rel
    )


def _t2_7(beta_side: str):
    def run(rng, config, integration) -> List[BoundCheck]:
        a = float(rng.uniform(0.1, 1.0))
        b = a + float(rng.uniform(0.5, 3.0))
        x = TruncatedModel(random_model(rng), a, b)
        y = TruncatedModel(random_model(rng), a, b)
        if beta_side == "i":
            beta = float(rng.uniform(1.0, config.beta_max))
        else:
            beta = float(rng.uniform(config.beta_min, 1.0))
        return check_finite_support_bounds_T2_7(
            x, y, beta, _weight(rng, config), (a, b), integration, config.margin_rel
        )

    return run


def _t2_8(rng, config, integration) -> List[BoundCheck]:
    zeta = float(config.weight_exponents[rng.integers(len(config.weight_exponents))])
    return [
        check_weight_power_bound_T2_8(
            random_model(rng), random_model(rng), _beta(rng, config), zeta, integration,
            config.margin_rel,
        )
    ]


def _t2_9(rng, config, integration) -> List[BoundCheck]:
    weights = rng.dirichlet(np.ones(3))
    components = tuple((float(p), random_model(rng)) for p in weights)
    return [
        check_mixture_bound_T2_9(
            components, random_model(rng), _beta(rng, config), _weight(rng, config), integration,
            config.margin_rel,
        )
    ]


def _t3_2(rng, config, integration) -> List[BoundCheck]:
    alpha = float(rng.choice([rng.uniform(0.2, 0.95), rng.uniform(1.05, 5.0)]))
    t = float(rng.uniform(0.0, 2.0))
    return [
        check_phr_scaling_T3_2(
            random_model(rng), random_model(rng), alpha, _beta(rng, config),
            _weight(rng, config), t, integration, config.margin_rel,
        )
    ]


Generator = Callable[[np.random.Generator, VerifyConfig, IntegrationConfig], List[BoundCheck]]

SUITES: Dict[TheoremId, Generator] = {
    TheoremId.T2_1i: _t2_1("i"),
    TheoremId.T2_1ii: _t2_1("ii"),
    TheoremId.T2_2: _t2_2,
    TheoremId.T2_3: _t2_3_4,
    TheoremId.T2_4: _t2_3_4,
    TheoremId.T2_7i: _t2_7("i"),
    TheoremId.T2_7ii: _t2_7("ii"),
    TheoremId.T2_8: _t2_8,
    TheoremId.T2_9: _t2_9,
    TheoremId.T3_2: _t3_2,
}


def run_suite(
    theorem: TheoremId,
    config: Optional[VerifyConfig] = None,
    integration: Optional[IntegrationConfig] = None,
) -> List[BoundCheck]:
    """
    ``config.configs`` randomized checks of one theorem.

    Only the checks of the requested theorem are returned (T2_3 and T2_4 share
    a generator but are reported separately), one per configuration except for
    T2_3, which yields both of its parts.
    """
    config = config or VerifyConfig()
    integration = integration or IntegrationConfig()
    generator = SUITES[theorem]
    index = list(TheoremId).index(theorem)
    checks: List[BoundCheck] = []
    for i in range(config.configs):
        rng = make_rng(config.seed, index, i)
        checks.extend(c for c in generator(rng, config, integration) if c.theorem_id is theorem)
    summary = _summarize(checks)
    logger.info(f"{theorem.value}: {config.configs} configs, {summary}")
    if summary.get(CheckStatus.VIOLATED.value):
        logger.warning(f"{theorem.value}: {summary[CheckStatus.VIOLATED.value]} violations")
    return checks


def run_all_suites(
    config: Optional[VerifyConfig] = None, integration: Optional[IntegrationConfig] = None
) -> List[BoundCheck]:
    checks: List[BoundCheck] = []
    for theorem in TheoremId:
        checks.extend(run_suite(theorem, config, integration))
    return checks


def _summarize(checks: List[BoundCheck]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for c in checks:
        counts[c.status.value] = counts.get(c.status.value, 0) + 1
    return counts


def summarize(checks: List[BoundCheck]) -> Dict[str, int]:
    """Count of checks per status value."""
    return _summarize(checks)


def violations(checks: List[BoundCheck]) -> List[BoundCheck]:
    return [c for c in checks if c.status is CheckStatus.VIOLATED]

