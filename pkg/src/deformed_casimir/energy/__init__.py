"""Casimir energy of the minimal-length-deformed field.

The core is dimensionless: input beta*, output eps* normalised by the
magnitude of the undeformed energy of the same dimension.  Physical units
enter only through :func:`beta_star_from_physical` and :func:`eps_physical`.
"""
from __future__ import annotations

import math
from typing import Optional

from ..errors import DomainError
from ..quadrature import QuadratureSpec
from ..specialfn import zeta
from .coefficients import (
    coefficient_I,
    coefficient_I_quadrature,
    coefficient_J,
    coefficient_J_quadrature,
)
from .integrals import (
    bose_weight,
    eps1d_integral,
    eps1d_mode_sum,
    eps2d_double_integral,
    eps2d_integral,
    eps3d_double_integral,
    eps3d_integral,
    eps_undeformed,
    slab_kernel,
    stripe_kernel,
)
from .series import (
    LARGE_BETA_MIN,
    SMALL_BETA_MAX,
    eps1d_series_large,
    eps1d_series_small,
    eps2d_series_large,
    eps2d_series_small,
    eps3d_series_large,
    eps3d_series_small,
)
from .types import BetaStar, Dimension, EnergyResult, Method, PhysicalSetup, as_beta


def vacuum_mode_energy(x: float) -> float:
    """Vacuum energy of one deformed mode in units of hbar*omega.

    ``x = beta hbar omega / 2``; returns ``(sqrt(1 + x^2) + x) / 2``.
    """
    if not x >= 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return 0.5 * (math.hypot(1.0, x) + x)


def oscillator_level(N: int, x: float) -> float:
    """Level ``N`` of the deformed oscillator in units of hbar*omega."""
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    if not x >= 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return (N + 0.5) * math.hypot(1.0, x) + x * (N * N + N + 0.5)


_DISPATCH = {
    (Dimension.D1, Method.INTEGRAL): eps1d_integral,
    (Dimension.D1, Method.MODE_SUM): eps1d_mode_sum,
    (Dimension.D1, Method.SERIES_SMALL): eps1d_series_small,
    (Dimension.D1, Method.SERIES_LARGE): eps1d_series_large,
    (Dimension.D2, Method.INTEGRAL): eps2d_integral,
    (Dimension.D2, Method.DOUBLE_INTEGRAL): eps2d_double_integral,
    (Dimension.D2, Method.SERIES_SMALL): eps2d_series_small,
    (Dimension.D2, Method.SERIES_LARGE): eps2d_series_large,
    (Dimension.D3, Method.INTEGRAL): eps3d_integral,
    (Dimension.D3, Method.DOUBLE_INTEGRAL): eps3d_double_integral,
    (Dimension.D3, Method.SERIES_SMALL): eps3d_series_small,
    (Dimension.D3, Method.SERIES_LARGE): eps3d_series_large,
}


def methods_for(dimension) -> list[Method]:
    """Methods defined in ``dimension`` in canonical order (closed form excluded)."""
    dimension = Dimension(dimension)
    return [m for m in Method if (dimension, m) in _DISPATCH]


def compute(
    dimension,
    beta_star,
    method="auto",
    spec: Optional[QuadratureSpec] = None,
    order: Optional[int] = None,
) -> EnergyResult:
    """Evaluate eps* with the requested representation.

    ``method="auto"`` gives the closed form at beta* = 0 and the integral
    otherwise.  Every method returns the closed form at beta* = 0.
    """
    dimension = Dimension(dimension)
    beta = as_beta(beta_star)
    if method != "auto":
        method = Method(method)
        if method is not Method.CLOSED_FORM and (dimension, method) not in _DISPATCH:
            raise DomainError(f"{method.value} is not available in {int(dimension)}D")
    if beta.value == 0.0:
        return eps_undeformed(dimension)
    if method == "auto":
        method = Method.INTEGRAL
    if method is Method.CLOSED_FORM:
        raise DomainError("closed form only exists at beta* = 0")

    fn = _DISPATCH[(dimension, method)]
    spec = spec or QuadratureSpec()
    if method in (Method.INTEGRAL, Method.DOUBLE_INTEGRAL):
        return fn(beta, spec)
    if method is Method.MODE_SUM:
        return fn(beta, max(1e-10, 10 * spec.rel_tol))
    if method is Method.SERIES_LARGE and dimension is Dimension.D2:
        return fn(beta, order, spec)
    return fn(beta, order)


def beta_star_from_physical(setup: PhysicalSetup) -> BetaStar:
    """beta* = beta * hbar_c * pi / (2 a)."""
    return BetaStar(setup.beta * setup.hbar_c * math.pi / (2.0 * setup.a))


def energy_scale(dimension, setup: PhysicalSetup) -> float:
    """Magnitude of the undeformed Casimir energy in the setup's units."""
    dimension = Dimension(dimension)
    hc, a = setup.hbar_c, setup.a
    if dimension is Dimension.D1:
        return hc * math.pi / (24.0 * a ** 2)
    if dimension is Dimension.D2:
        return hc * zeta(3) / (16.0 * math.pi * a ** 3)
    return hc * math.pi ** 2 / (720.0 * a ** 4)


def eps_physical(result: EnergyResult, setup: PhysicalSetup) -> float:
    """Convert a normalised result back to an energy density."""
    return result.eps_star * energy_scale(result.dimension, setup)


__all__ = [
    "BetaStar", "Dimension", "EnergyResult", "Method", "PhysicalSetup",
    "LARGE_BETA_MIN", "SMALL_BETA_MAX",
    "beta_star_from_physical", "bose_weight", "coefficient_I",
    "coefficient_I_quadrature", "coefficient_J", "coefficient_J_quadrature",
    "compute", "energy_scale", "eps1d_integral", "eps1d_mode_sum",
    "eps1d_series_large", "eps1d_series_small", "eps2d_double_integral",
    "eps2d_integral", "eps2d_series_large", "eps2d_series_small",
    "eps3d_double_integral", "eps3d_integral", "eps3d_series_large",
    "eps3d_series_small", "eps_physical", "eps_undeformed", "methods_for",
    "oscillator_level", "slab_kernel", "stripe_kernel", "vacuum_mode_energy",
]
