"""
Ricker and Tent maps.

    Ricker: x' = x exp(r (1 - x)),           r > 0, x0 > 0
    Tent:   x' = r x if x < 1/2 else r (1 - x), 0 <= r <= 2, x0 in (0, 1)

Trajectories are pure recurrences and therefore bit-identical across runs.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union
import logging

import numpy as np
import pandas as pd

from src.core import constants as C
from src.core.errors import DomainError

logger = logging.getLogger(__name__)


class MapKind(Enum):
    RICKER = "ricker"
    TENT = "tent"

    @classmethod
    def parse(cls, value: Union[str, "MapKind"]) -> "MapKind":
        if isinstance(value, MapKind):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise DomainError(
                f"unknown map {value!r}", choices=[k.value for k in cls]
            ) from None


def validate_parameter(kind: MapKind, r: float) -> None:
    if kind is MapKind.RICKER and not r > 0:
        raise DomainError("Ricker map needs r > 0", r=r)
    if kind is MapKind.TENT and not 0 <= r <= C.TENT_R_MAX:
        raise DomainError("Tent map needs 0 <= r <= 2", r=r)


def validate_start(kind: MapKind, x0: float) -> None:
    if kind is MapKind.RICKER and not 0 < x0 < np.inf:
        raise DomainError("Ricker map needs x0 > 0", x0=x0)
    if kind is MapKind.TENT and not 0 < x0 < 1:
        raise DomainError("Tent map needs 0 < x0 < 1", x0=x0)


@dataclass(frozen=True)
class MapSpec:
    """A trajectory request: map, control parameter, start, length and burn-in."""

    kind: MapKind
    r: float
    x0: float = C.CHAOS_X0
    n: int = C.CHAOS_LENGTH
    burn_in: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", MapKind.parse(self.kind))
        validate_parameter(self.kind, self.r)
        validate_start(self.kind, self.x0)
        if self.n < 2:
            raise DomainError("trajectory length must be >= 2", n=self.n)
        if self.burn_in < 0:
            raise DomainError("burn_in must be >= 0", burn_in=self.burn_in)


def step(kind: Union[MapKind, str], r, x):
    """One application of the map; r and x broadcast as numpy arrays."""
    kind = MapKind.parse(kind)
    if kind is MapKind.RICKER:
        return x * np.exp(r * (1.0 - x))
    return np.where(x < 0.5, r * x, r * (1.0 - x))


def _ricker_next(r: float, x: float) -> float:
    return x * float(np.exp(r * (1.0 - x)))


def _tent_next(r: float, x: float) -> float:
    return r * x if x < 0.5 else r * (1.0 - x)


def iterate(spec: MapSpec) -> np.ndarray:
    """
    The trajectory x0, x1, ... with the first ``burn_in`` states dropped.

    Returns:
        Array of length ``spec.n``; its first element is x0 when burn_in is 0.
    """
    advance = _ricker_next if spec.kind is MapKind.RICKER else _tent_next
    total = spec.burn_in + spec.n
    out = np.empty(total)
    x = float(spec.x0)
    for i in range(total):
        out[i] = x
        x = advance(spec.r, x)
    trajectory = out[spec.burn_in :]
    logger.debug(
        f"{spec.kind.value} r={spec.r:g}: {spec.n} states in "
        f"[{trajectory.min():.6g}, {trajectory.max():.6g}]"
    )
    return trajectory


def bifurcation_data(
    kind: Union[MapKind, str],
    r_range: Tuple[float, float],
    r_steps: int,
    x0: float = C.CHAOS_X0,
    transient: int = 500,
    keep: int = 100,
) -> pd.DataFrame:
    """
    Long-format (r, x) pairs for a bifurcation diagram.

    For each r on an evenly spaced grid the map is run ``transient`` steps
    from x0, then the next ``keep`` states are emitted. All r values advance
    together as one vector.
    """
    kind = MapKind.parse(kind)
    lo, hi = r_range
    if r_steps < 2:
        raise DomainError("r_steps must be >= 2", r_steps=r_steps)
    if transient < 0 or keep < 0 or transient + keep < 1:
        raise DomainError("need transient >= 0, keep >= 0 and transient + keep >= 1")
    if not lo <= hi:
        raise DomainError("r range must satisfy lo <= hi", lo=lo, hi=hi)
    validate_parameter(kind, lo)
    validate_parameter(kind, hi)
    validate_start(kind, x0)

    rs = np.linspace(lo, hi, r_steps)
    x = np.full(r_steps, float(x0))
    for _ in range(transient):
        x = step(kind, rs, x)
    kept = np.empty((keep, r_steps))
    for i in range(keep):
        kept[i] = x
        x = step(kind, rs, x)

    # r-major order: all kept states of the first r, then the next r
    return pd.DataFrame({"r": np.repeat(rs, keep), "x": kept.T.ravel()})
