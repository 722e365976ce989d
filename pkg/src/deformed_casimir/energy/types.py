"""Value types for the dimensionless Casimir-energy core."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from ..errors import DomainError


class Dimension(enum.IntEnum):
    D1 = 1
    D2 = 2
    D3 = 3


class Method(enum.Enum):
    INTEGRAL = "integral"
    DOUBLE_INTEGRAL = "double-integral"
    MODE_SUM = "mode-sum"
    SERIES_SMALL = "series-small"
    SERIES_LARGE = "series-large"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class BetaStar:
    """Dimensionless deformation parameter, finite and non-negative."""

    value: float

    def __post_init__(self):
        v = self.value
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise DomainError(f"beta* must be a real number, got {v!r}")
        if not math.isfinite(v) or v < 0:
            raise DomainError(f"beta* must be finite and >= 0, got {v!r}")
        object.__setattr__(self, "value", float(v))

    def __float__(self):
        return self.value


def as_beta(beta_star) -> BetaStar:
    return beta_star if isinstance(beta_star, BetaStar) else BetaStar(beta_star)


@dataclass(frozen=True)
class EnergyResult:
    """One normalised Casimir energy.

    ``eps_star`` is the energy divided by the magnitude of the undeformed
    result in the same dimension, so it equals -1 at beta* = 0.  For series
    methods ``order`` is the highest power of beta* (small series) or of
    1/beta* (large series) actually summed.
    """

    dimension: Dimension
    beta_star: BetaStar
    method: Method
    eps_star: float
    error_estimate: float
    order: Optional[int] = None


@dataclass(frozen=True)
class PhysicalSetup:
    """Deformation parameter, length scale and hbar*c in one unit system."""

    beta: float
    a: float
    hbar_c: float = 1.0

    def __post_init__(self):
        for name in ("beta", "a", "hbar_c"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f"{name} must be a finite number, got {v!r}")
        if self.beta < 0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")
        if self.a <= 0:
            raise DomainError(f"a must be > 0, got {self.a}")
        if self.hbar_c <= 0:
            raise DomainError(f"hbar_c must be > 0, got {self.hbar_c}")
