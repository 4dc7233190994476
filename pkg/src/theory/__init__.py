"""Numerical evaluation of the measure's bounds, orderings and transformation properties."""

from src.theory.bounds import (
    BoundCheck,
    CheckStatus,
    Direction,
    TheoremId,
    check_finite_support_bounds_T2_7,
    check_lower_bound_T2_1,
    check_mixture_bound_T2_9,
    check_monotonicity_T2_3_T2_4,
    check_phr_scaling_T3_2,
    check_stochastic_order_bounds,
    check_weight_power_bound_T2_8,
    judge,
    numerical_margin,
)
from src.theory.suite import run_all_suites, run_suite, summarize, violations

__all__ = [
    "BoundCheck",
    "CheckStatus",
    "Direction",
    "TheoremId",
    "check_finite_support_bounds_T2_7",
    "check_lower_bound_T2_1",
    "check_mixture_bound_T2_9",
    "check_monotonicity_T2_3_T2_4",
    "check_phr_scaling_T3_2",
    "check_stochastic_order_bounds",
    "check_weight_power_bound_T2_8",
    "judge",
    "numerical_margin",
    "run_all_suites",
    "run_suite",
    "summarize",
    "violations",
]
