"""Expansion coefficients for the energy series and integrand kernels.

Everything that is rational is generated exactly with ``Fraction``; terms
carrying zeta values or powers of pi are returned as floats.

Series conventions (``b`` is beta*):

* small-b series: ``eps* = -P * sum_m c_m b^(2m)``; ``c_0 = 1`` in 1D and
  3D, ``P = 1``; in 2D ``P = 16 pi^2 / zeta(3)`` and ``c_0 = zeta(3)/(16 pi^2)``
  so that the ``c_m`` are the bracket coefficients as usually printed.
* large-b series: ``eps* = -P / b^s * sum_p c_p b^(-p)`` with ``(P, s)``
  listed in :data:`LARGE_PREFACTORS`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .. import quadrature as quad
from ..errors import DomainError
from ..quadrature import QuadratureSpec
from ..specialfn import bernoulli, catalan, gamma_half, zeta

MAX_SMALL_ORDER = 16


@lru_cache(maxsize=None)
def binom_half(m: int) -> Fraction:
    """Binomial coefficient C(1/2, m)."""
    value = Fraction(1)
    for j in range(m):
        value *= (Fraction(1, 2) - j) / (j + 1)
    return value


def gamma_shifted_half(m: int) -> Fraction:
    """Gamma(m - 1/2) / sqrt(pi), exact, for m >= 0."""
    value = Fraction(-2)  # Gamma(-1/2) = -2 sqrt(pi)
    for j in range(m):
        value *= Fraction(2 * j - 1, 2)
    return value


def _central_ratio(n):
    # (2n-1)!! / (2n)!! = C(2n, n) / 4^n
    return Fraction(math.comb(2 * n, n), 4 ** n)


def mode_tail_coefficients(jmax: int) -> list[Fraction]:
    """Coefficients ``d_j`` of ``(sqrt(1 + y^2) - y)^2 = sum_j d_j y^(-2j)``.

    Index 0 is a placeholder (zero); ``d_1 = 1/4, d_2 = -1/8, ...``.
    """
    # (sqrt(1+u^2) - 1)^2 / u^2 with u = 1/y, from the binomial series
    coeffs = [Fraction(0)] * (jmax + 1)
    for j in range(1, jmax + 1):
        coeffs[j] = sum(
            (binom_half(m) * binom_half(j + 1 - m) for m in range(1, j + 1)),
            Fraction(0),
        )
    return coeffs


def slab_kernel_taylor(jmax: int) -> list[Fraction]:
    """Taylor coefficients in x^2 of ``q(x) = h(x) / x^2`` where
    ``h(x) = (2x^2 - 1) sqrt(1 - x^2) + arcsin(x)/x``."""
    s = [binom_half(m) * (-1) ** m for m in range(jmax + 2)]
    h = []
    for j in range(jmax + 2):
        arcsin_part = _central_ratio(j) / (2 * j + 1)
        h.append((2 * s[j - 1] if j else 0) - s[j] + arcsin_part)
    return h[1:jmax + 2]


def stripe_kernel_taylor(mmax: int) -> list[Fraction]:
    """``r_m`` with ``int_0^1 x^2 sqrt((1-k^2 x^2)/(1-x^2)) dx = pi sum r_m k^(2m)``."""
    return [
        binom_half(m) * (-1) ** m * _central_ratio(m + 1) / 2
        for m in range(mmax + 1)
    ]


# -- small beta* -------------------------------------------------------------

def _check_small_order(order):
    if order < 0 or order % 2 or order > MAX_SMALL_ORDER:
        raise DomainError(
            f"small-beta* order must be even and in [0, {MAX_SMALL_ORDER}], got {order}"
        )


def small_1d(count: int) -> list[Fraction]:
    """Bracket coefficients of the 1D small-beta* series, ``c_0 = 1``.

    c_m = 12 (-1)^(m+1) Gamma(m - 1/2) B_(2m+2) / (4 sqrt(pi) (m+1)!)
    """
    return [
        12 * (-1) ** (m + 1) * gamma_shifted_half(m) * bernoulli(2 * m + 2)
        / (4 * math.factorial(m + 1))
        for m in range(count)
    ]


def small_3d(count: int) -> list[Fraction]:
    """Bracket coefficients of the 3D small-beta* series, ``c_0 = 1``."""
    coeffs = [Fraction(1)]
    for k in range(1, count):
        term = (
            gamma_shifted_half(k) * (-1) ** (k - 1) * bernoulli(2 * k + 4)
            / (math.factorial(k) * 2 * (2 * k + 4) * (2 * k + 3))
        )
        coeffs.append(-360 * term)
    return coeffs


def small_2d(count: int) -> list[float]:
    """Bracket coefficients of the 2D small-beta* series, pre-normalisation.

    ``c_0 = zeta(3)/(16 pi^2)``, ``c_1 = -9 zeta(5)/(128 pi^4)``, ...
    """
    coeffs = []
    for m in range(count):
        # Gamma(3/2) Gamma(1/2) / (2 pi) = 1/4
        gamma_ratio = (
            float(gamma_shifted_half(m)) * math.sqrt(math.pi) * gamma_half(2 * m + 3)
            / (gamma_half(2 * m + 4) * math.factorial(m))
        )
        moment = gamma_half(4 * m + 6) * zeta(2 * m + 3) / (2 * math.pi) ** (2 * m + 3)
        coeffs.append(-0.25 * gamma_ratio * moment)
    return coeffs


SMALL_PREFACTOR = {1: 1.0, 2: 16 * math.pi ** 2 / zeta(3), 3: 1.0}


def small_coefficients(dimension: int, count: int) -> list:
    return {1: small_1d, 2: small_2d, 3: small_3d}[int(dimension)](count)


# -- large beta* -------------------------------------------------------------

def large_1d(max_power: int) -> dict[int, float]:
    """Bracket ``{p: c_p}`` with ``eps* = -sum_p c_p / b^p`` in 1D."""
    coeffs = {}
    if max_power >= 1:
        coeffs[1] = 3.0
    if max_power >= 2:
        coeffs[2] = -4.0
    n = 1
    while 2 * n + 1 <= max_power:
        gamma_ratio = gamma_half(2 * n + 1) / math.sqrt(math.pi)
        coeffs[2 * n + 1] = (
            6 * (-1) ** (n + 1) * gamma_ratio * zeta(2 * n) / math.factorial(n + 1)
        )
        n += 1
    return coeffs


def _slab_ratio(m):
    # (2m+1)! / (2^(2m-1) (m!)^2 (m+1)(m+2))
    return math.factorial(2 * m + 1) / (
        2.0 ** (2 * m - 1) * math.factorial(m) ** 2 * (m + 1) * (m + 2)
    )


def large_3d(max_power: int) -> dict[int, float]:
    """Bracket ``{p: c_p}`` with ``eps* = -(45/b^3) sum_p c_p / b^p`` in 3D."""
    coeffs = {0: 0.5 * (math.log(2.0) - 0.25)}
    if max_power >= 1:
        coeffs[1] = -(math.pi / 2 - 16.0 / 15.0)
    m = 1
    while 2 * m <= max_power:
        coeffs[2 * m] = (
            (-1) ** (m - 1) * zeta(2 * m) / (2 * m) * (1.0 - _slab_ratio(m))
        )
        m += 1
    return coeffs


def large_3d_via_moments(max_power: int) -> dict[int, float]:
    """Same bracket assembled from Bernoulli numbers and the moments I(n)."""
    coeffs = {}
    for n in range(max_power + 1):
        if n > 1 and n % 2:
            continue
        coeffs[n] = (
            float(bernoulli(n)) / math.factorial(n) * (2 * math.pi) ** n
            * coefficient_I(n) / math.pi
        )
    return coeffs


def large_2d(max_power: int, spec: QuadratureSpec | None = None) -> dict[int, float]:
    """Bracket ``{p: c_p}`` with ``eps* = -(8 pi/(zeta(3) b^2)) sum_p c_p / b^p``."""
    coeffs = {}
    for n in range(max_power + 1):
        if n > 1 and n % 2:
            continue
        coeffs[n] = (
            float(bernoulli(n)) / math.factorial(n) * (2 * math.pi) ** n
            * coefficient_J(n, spec)
        )
    return coeffs


# eps* = -P / b^s * bracket
LARGE_PREFACTORS = {
    1: (1.0, 0),
    2: (8 * math.pi / zeta(3), 2),
    3: (45.0, 3),
}


# -- moments I(n), J(n) -----------------------------------------------------

def coefficient_I(n: int) -> float:
    """Closed form of ``I(n) = int_0^1 x^n [(2x^2-1) sqrt(1-x^2) + arcsin(x)/x] dx``.

    Defined for n = 0, 1 and even n; odd n >= 3 are never needed because the
    matching Bernoulli numbers vanish.
    """
    if n < 0 or (n > 1 and n % 2):
        raise DomainError(f"I(n) closed form available for n in {{0, 1, 2, 4, ...}}, got {n}")
    if n == 0:
        return 0.5 * math.pi * (math.log(2.0) - 0.25)
    if n == 1:
        return 0.5 * math.pi - 16.0 / 15.0
    m = n // 2
    return math.pi / (4 * m) - 2 * gamma_half(3) * gamma_half(2 * m + 3) / (
        m * gamma_half(2 * m + 6)
    )


def _slab_kernel(x):
    x = np.asarray(x, dtype=float)
    root = np.sqrt(np.clip((1 - x) * (1 + x), 0.0, None))
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(x > 0, np.arcsin(np.minimum(x, 1.0)) / np.where(x > 0, x, 1.0), 1.0)
    return (2 * x * x - 1) * root + ratio


def coefficient_I_quadrature(n: int, spec: QuadratureSpec | None = None) -> float:
    """I(n) by direct quadrature (any n >= 0)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    spec = spec or QuadratureSpec(rel_tol=1e-13)
    res = quad.integrate_finite(
        lambda x: x ** n * _slab_kernel(x), 0.0, 1.0, spec, quad.SQRT_RIGHT
    )
    return res.value


_J_CLOSED = {
    0: (math.pi / 2 - 2.0 / 3.0) / 3.0,
    1: catalan() / 4 - 1.0 / 24.0,
    2: 2.0 / 15.0,
}


def coefficient_J(n: int, spec: QuadratureSpec | None = None) -> float:
    """``J(n)``: closed forms for n <= 2, nested quadrature beyond."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n in _J_CLOSED:
        return _J_CLOSED[n]
    return coefficient_J_quadrature(n, spec)


@lru_cache(maxsize=256)
def _j_quadrature(n, spec):
    def inner(x):
        def f(y):
            return y ** (n + 1) * np.sqrt(np.clip((1 - x * y) * (1 + x * y), 0.0, None))
        return quad.integrate_finite(f, 0.0, 1.0, spec, quad.SQRT_RIGHT).value

    def outer(xs):
        root = np.sqrt((1 - xs) * (1 + xs))
        values = np.array([inner(float(x)) for x in xs])
        return xs * xs / root * values

    return quad.integrate_finite(outer, 0.0, 1.0, spec, quad.SQRT_RIGHT).value


def coefficient_J_quadrature(n: int, spec: QuadratureSpec | None = None) -> float:
    """``J(n) = int_0^1 x^2/sqrt(1-x^2) int_0^1 y^(n+1) sqrt(1-x^2 y^2) dy dx``
    by nested quadrature."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return _j_quadrature(n, spec or QuadratureSpec(rel_tol=1e-13))
