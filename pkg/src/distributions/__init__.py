"""Parametric survival models, their transforms and the model grammar."""

from src.distributions.base import (
    ModelFamily,
    SurvivalModel,
    make_rng,
    quantile,
    sample,
    sf,
    stochastically_le,
)
from src.distributions.families import Exponential, GammaShape2, Rayleigh, Weibull
from src.distributions.grammar import parse_model
from src.distributions.transforms import (
    AffineTransform,
    MixtureHazard,
    PhrTransform,
    PoTransform,
    PowerTransform,
    TruncatedModel,
)

__all__ = [
    "ModelFamily",
    "SurvivalModel",
    "make_rng",
    "quantile",
    "sample",
    "sf",
    "stochastically_le",
    "Exponential",
    "GammaShape2",
    "Rayleigh",
    "Weibull",
    "AffineTransform",
    "MixtureHazard",
    "PhrTransform",
    "PoTransform",
    "PowerTransform",
    "TruncatedModel",
    "parse_model",
]
