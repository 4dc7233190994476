"""Cumulative residual inaccuracy measures: quadrature engine and closed forms."""

from src.measures.closed_form import (
    closed_form,
    phr_study_true_value,
    two_sample_true_value,
    wfgcri_closed_form_exp,
)
from src.measures.inaccuracy import (
    MEASURE_NAMES,
    MeasureRequest,
    MeasureResult,
    compute,
    cre,
    cri,
    dwfgcri,
    dwfgcri_phr,
    dwfgcri_po,
    fgcre,
    fgcri,
    measure_curve,
    shannon_entropy,
    wcri,
    wfgcre,
    wfgcri,
)
from src.measures.weights import WeightSpec

__all__ = [
    "MEASURE_NAMES",
    "MeasureRequest",
    "MeasureResult",
    "WeightSpec",
    "closed_form",
    "compute",
    "cre",
    "cri",
    "dwfgcri",
    "dwfgcri_phr",
    "dwfgcri_po",
    "fgcre",
    "fgcri",
    "measure_curve",
    "phr_study_true_value",
    "shannon_entropy",
    "two_sample_true_value",
    "wcri",
    "wfgcre",
    "wfgcri",
    "wfgcri_closed_form_exp",
]
