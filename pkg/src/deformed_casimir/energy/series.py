"""Small- and large-beta* series for eps* in 1, 2 and 3 dimensions.

``order`` always counts powers of the expansion variable in eps* itself:
the highest power of beta* kept by a small series, or the highest power of
1/beta* kept by a large series.  Small series are asymptotic and are cut
at the smallest term even if a higher order was requested; large series
converge for beta* > 1.

Small-series error estimates are the first omitted term plus the
exponentially small endpoint piece.  Because the omitted terms all share a
sign, the actual remainder can exceed that estimate by a modest factor;
three estimates is a safe bound throughout the validity window.
"""
from __future__ import annotations

import math
import sys
from typing import Optional

from ..errors import DomainError
from ..quadrature import QuadratureSpec
from . import coefficients as coef
from .integrals import eps_undeformed
from .types import Dimension, EnergyResult, Method, as_beta

SMALL_BETA_MAX = 1.5
LARGE_BETA_MIN = 1.0

# Default term caps for order=None on the large side.  The 2D cap is lower
# because every J(n) with n >= 4 costs a nested quadrature.
_AUTO_LARGE_ORDER = {1: 121, 2: 34, 3: 123}
_EPS = sys.float_info.epsilon


def endpoint_term(dimension, b: float) -> float:
    """Size of the exponentially small piece the small-beta* series misses.

    The integrals stop at t = 1/beta*, where the kernel has a square-root
    branch point; the power series in beta* cannot see that cut-off.  In 3D
    the kernel is pi/2 there and the missing piece is close to
    ``22.5 b^-3 e^(-2 pi/b)``; in 1D the kernel vanishes like a square root
    and the piece is of order ``b^(-1/2) e^(-2 pi/b)``.  Both are doubled
    for safety.  In 2D the looser ``e^(-1/b)`` is used.
    """
    if b == 0.0:
        return 0.0
    if int(dimension) == 2:
        return math.exp(-1.0 / b)
    damp = math.exp(-2.0 * math.pi / b)
    if int(dimension) == 3:
        return 2.0 * 22.5 * b ** -3 * damp
    half_moment = math.sqrt(2.0) * 0.5 * math.sqrt(math.pi) / (2 * math.pi) ** 1.5
    return 2.0 * 24.0 * half_moment * b ** -0.5 * damp


def small_series_parts(dimension, b: float, order: Optional[int] = None):
    """Evaluate a small-beta* series and its error budget.

    Returns ``(value, order_used, first_omitted, endpoint)`` where
    ``first_omitted`` is the magnitude (in eps* units) of the first term
    left out, after optimal truncation, and ``endpoint`` is
    :func:`endpoint_term`.
    """
    if b > SMALL_BETA_MAX:
        raise DomainError(
            f"small-beta* series refused at beta*={b} > {SMALL_BETA_MAX}"
        )
    order = coef.MAX_SMALL_ORDER if order is None else order
    coef._check_small_order(order)

    count = order // 2 + 2  # one spare coefficient for the omitted term
    coeffs = [float(c) for c in coef.small_coefficients(dimension, count)]
    b2 = b * b
    terms = [c * b2 ** m for m, c in enumerate(coeffs)]

    used = 1
    while used <= order // 2 and abs(terms[used]) <= abs(terms[used - 1]):
        used += 1
    prefactor = coef.SMALL_PREFACTOR[int(dimension)]
    value = -prefactor * math.fsum(terms[:used])
    first_omitted = prefactor * abs(terms[used])
    return value, 2 * (used - 1), first_omitted, endpoint_term(dimension, b)


def _series_small(dimension, beta_star, order):
    beta = as_beta(beta_star)
    b = beta.value
    if b == 0.0:
        return eps_undeformed(dimension)
    value, used, omitted, endpoint = small_series_parts(dimension, b, order)
    rounding = 4.0 * _EPS * abs(value)
    return EnergyResult(
        Dimension(dimension), beta, Method.SERIES_SMALL, value,
        omitted + endpoint + rounding, used,
    )


def eps1d_series_small(beta_star, order: Optional[int] = None) -> EnergyResult:
    """eps* = -(1 - b^2/20 - b^4/168 - b^6/320 - 5 b^8/1408 - ...)."""
    return _series_small(1, beta_star, order)


def eps2d_series_small(beta_star, order: Optional[int] = None) -> EnergyResult:
    """eps* = -(16 pi^2/zeta(3)) [zeta(3)/(16 pi^2) - 9 zeta(5) b^2/(128 pi^4) - ...]."""
    return _series_small(2, beta_star, order)


def eps3d_series_small(beta_star, order: Optional[int] = None) -> EnergyResult:
    """eps* = -(1 - b^2/7 - 3 b^4/112 - 5 b^6/264 - ...)."""
    return _series_small(3, beta_star, order)


def _large_bracket(dimension, max_power, spec):
    if dimension == 1:
        return coef.large_1d(max_power)
    if dimension == 3:
        return coef.large_3d(max_power)
    return coef.large_2d(max_power, spec)


def _series_large(dimension, beta_star, order, spec=None):
    beta = as_beta(beta_star)
    b = beta.value
    if b <= LARGE_BETA_MIN:
        raise DomainError(
            f"large-beta* series needs beta* > {LARGE_BETA_MIN}, got {b}"
        )
    prefactor, shift = coef.LARGE_PREFACTORS[dimension]
    auto = order is None
    order = _AUTO_LARGE_ORDER[dimension] if auto else order
    if order < shift:
        raise DomainError(f"order must be >= {shift} in {dimension}D, got {order}")

    # bracket powers p contribute b^-(p + shift); fetch one extra non-zero
    # term beyond the requested order for the error estimate
    bracket = _large_bracket(dimension, order - shift + 2, spec)
    powers = sorted(bracket)
    terms = [(p, bracket[p] * b ** -p) for p in powers]
    kept = [(p, t) for p, t in terms if p + shift <= order]
    rest = [t for p, t in terms if p + shift > order and t != 0.0]

    if auto:
        # stop once terms no longer matter at double precision
        total = abs(kept[0][1])
        for i, (p, t) in enumerate(kept):
            if i > 2 and abs(t) < 1e-17 * total:
                rest = [t] + rest
                kept = kept[:i]
                break
    omitted = abs(rest[0]) if rest else 0.0
    value = -prefactor * b ** -shift * math.fsum(t for _, t in kept)
    error = prefactor * b ** -shift * omitted + 4.0 * _EPS * abs(value)
    return EnergyResult(
        Dimension(dimension), beta, Method.SERIES_LARGE, value, error,
        kept[-1][0] + shift,
    )


def eps1d_series_large(beta_star, order: Optional[int] = None) -> EnergyResult:
    """eps* = -(3/b - 4/b^2 + pi^2/(4 b^3) - pi^4/(120 b^5) + pi^6/(2016 b^7) - ...)."""
    return _series_large(1, beta_star, order)


def eps3d_series_large(beta_star, order: Optional[int] = None) -> EnergyResult:
    """eps* = -(45/b^3) [(ln 2 - 1/4)/2 - (pi/2 - 16/15)/b + pi^2/(24 b^2) + ...]."""
    return _series_large(3, beta_star, order)


def eps2d_series_large(
    beta_star, order: Optional[int] = None, spec: Optional[QuadratureSpec] = None
) -> EnergyResult:
    """eps* = -(8 pi/(zeta(3) b^2)) sum_n B_n (2 pi/b)^n J(n) / n!.

    J(n) for n >= 3 comes from nested quadrature under ``spec``.
    """
    return _series_large(2, beta_star, order, spec)
