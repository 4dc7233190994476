"""Power-law weight functions psi(w) = w**c."""

from dataclasses import dataclass
import math

import numpy as np

from src.core.errors import DomainError


@dataclass(frozen=True)
class WeightSpec:
    """psi(w) = w**exponent on w >= 0; exponent 0 is the unweighted case psi = 1."""

    exponent: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.exponent) and self.exponent >= 0):
            raise DomainError("weight exponent must be a finite value >= 0", c=self.exponent)

    def __call__(self, w):
        if self.exponent == 0:
            return np.ones_like(np.asarray(w, dtype=float)) if np.ndim(w) else 1.0
        return np.power(w, self.exponent)

    def log(self, w: float) -> float:
        """ln psi(w) for w > 0."""
        if self.exponent == 0:
            return 0.0
        return self.exponent * math.log(w)

    def inf_on(self, a: float, b: float) -> float:
        """Infimum of psi over (a, b); psi is nondecreasing."""
        return 1.0 if self.exponent == 0 else a**self.exponent

    def sup_on(self, a: float, b: float) -> float:
        return 1.0 if self.exponent == 0 else b**self.exponent

    def __str__(self) -> str:
        return f"w^{self.exponent:g}"
