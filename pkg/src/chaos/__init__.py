"""Chaotic-map trajectories, bifurcation data and WFGCRI curves."""

from src.chaos.curves import CurveResult, wfgcri_curve
from src.chaos.maps import MapKind, MapSpec, bifurcation_data, iterate, step

__all__ = [
    "CurveResult",
    "MapKind",
    "MapSpec",
    "bifurcation_data",
    "iterate",
    "step",
    "wfgcri_curve",
]
