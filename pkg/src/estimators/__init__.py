"""Nonparametric plug-in estimators over empirical survival functions."""

from src.estimators.empirical import (
    EmpiricalSample,
    empirical_sf,
    estimate_wcri,
    estimate_wfgcre,
    estimate_wfgcri_phr,
    estimate_wfgcri_two_sample,
    phr_curve,
    two_sample_cells,
)

__all__ = [
    "EmpiricalSample",
    "empirical_sf",
    "estimate_wcri",
    "estimate_wfgcre",
    "estimate_wfgcri_phr",
    "estimate_wfgcri_two_sample",
    "phr_curve",
    "two_sample_cells",
]
