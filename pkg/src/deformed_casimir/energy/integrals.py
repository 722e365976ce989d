"""Regularised integral and mode-sum representations of eps*.

All integrals run over ``t in [0, 1/beta*]`` against the Bose-like weight
``1/(e^(2 pi t) - 1)``.  Beyond ``T_CUT`` that weight is below ``e^-125``,
so for ``1/beta* > T_CUT`` the range is cut there and an analytic bound on
the discarded tail is added to the error estimate.
"""
from __future__ import annotations

import math

import numpy as np

from .. import quadrature as quad
from ..errors import DomainError, PrecisionFloorError
from ..quadrature import QuadratureSpec
from ..specialfn import elliptic_KE, zeta, zeta_tail
from .coefficients import (
    mode_tail_coefficients,
    slab_kernel_taylor,
    stripe_kernel_taylor,
)
from .types import BetaStar, Dimension, EnergyResult, Method, as_beta

T_CUT = 20.0

_TWO_PI = 2.0 * math.pi
_SLAB_TAYLOR = [float(c) for c in slab_kernel_taylor(8)]
_SLAB_SWITCH = 0.05
_STRIPE_TAYLOR = [math.pi * float(c) for c in stripe_kernel_taylor(24)]
_STRIPE_SWITCH = 0.25
_MODE_TAIL = [float(c) for c in mode_tail_coefficients(8)]


def eps_undeformed(dimension) -> EnergyResult:
    """The undeformed Casimir energy, exactly -1 in normalised units."""
    return EnergyResult(Dimension(dimension), BetaStar(0.0), Method.CLOSED_FORM, -1.0, 0.0)


def bose_weight(t):
    """``t / (e^(2 pi t) - 1)`` with its limit ``1/(2 pi)`` filled in at t = 0."""
    t = np.asarray(t, dtype=float)
    safe = np.where(t == 0.0, 1.0, t)
    return np.where(t == 0.0, 1.0 / _TWO_PI, safe / np.expm1(_TWO_PI * safe))


def _sqrt_one_minus_sq(x):
    # sqrt(1 - x^2) without cancellation near x = 1; rounding past 1 clipped
    return np.sqrt(np.clip((1.0 - x) * (1.0 + x), 0.0, None))


def _bose_tail_bound(power, start):
    # int_start^inf t^power / (e^(2 pi t) - 1) dt, generous upper bound
    return 2.0 * start ** power * math.exp(-_TWO_PI * start) / _TWO_PI


def _integrate_t(f, beta, spec, power):
    """Integrate f over [0, 1/beta], cutting at T_CUT when 1/beta is larger."""
    upper = 1.0 / beta
    if upper <= T_CUT:
        res = quad.integrate_finite(f, 0.0, upper, spec, quad.SQRT_RIGHT)
        return res.value, res.error_estimate
    res = quad.integrate_finite(f, 0.0, T_CUT, spec, quad.SMOOTH)
    return res.value, res.error_estimate + _bose_tail_bound(power, T_CUT)


def _positive_beta(beta_star):
    beta = as_beta(beta_star)
    return beta, beta.value


# -- 1D ------------------------------------------------------------------------

def eps1d_integral(beta_star, spec: QuadratureSpec = QuadratureSpec()) -> EnergyResult:
    """eps* = -24 int_0^(1/b) t sqrt(1 - (b t)^2) / (e^(2 pi t) - 1) dt."""
    beta, b = _positive_beta(beta_star)
    if b == 0.0:
        return eps_undeformed(1)

    def f(t):
        return bose_weight(t) * _sqrt_one_minus_sq(b * t)

    value, err = _integrate_t(f, b, spec, power=1)
    return EnergyResult(Dimension.D1, beta, Method.INTEGRAL, -24.0 * value, 24.0 * err)


def mode_sum_cutoff(b: float) -> int:
    return max(10_000, math.ceil(10.0 / b))


def eps1d_mode_sum(beta_star, tol: float = 1e-10) -> EnergyResult:
    """Convergent mode-sum form of the 1D energy.

    eps* = -(12/b) [ S/2 + 1/4 - 1/(3b) ],  S = sum_n (sqrt(1 + (b n)^2) + b n)^-2.

    The first ``mode_sum_cutoff(b)`` terms are summed directly.  Beyond the
    cutoff each term is expanded in powers of ``1/(b n)`` and every power is
    summed analytically with :func:`zeta_tail`.  The bracket suffers a
    cancellation of order ``1/b^2`` for small ``b``, which the error
    estimate accounts for; a ``ConvergenceError`` is raised when that
    estimate exceeds ``tol``.
    """
    beta, b = _positive_beta(beta_star)
    if b == 0.0:
        return eps_undeformed(1)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")

    cutoff = mode_sum_cutoff(b)
    y = b * np.arange(1, cutoff + 1, dtype=float)
    head = math.fsum(1.0 / (np.sqrt(1.0 + y * y) + y) ** 2)

    jmax = len(_MODE_TAIL) - 2
    tail_terms = [
        _MODE_TAIL[j] * b ** (-2 * j) * zeta_tail(2.0 * j, cutoff + 1)
        for j in range(jmax, 0, -1)
    ]
    tail = math.fsum(tail_terms)
    truncation = abs(_MODE_TAIL[jmax + 1]) * b ** (-2 * jmax - 2) * zeta_tail(
        2.0 * jmax + 2, cutoff + 1
    )

    bracket = math.fsum([0.5 * head, 0.5 * tail, 0.25, -1.0 / (3.0 * b)])
    eps = np.finfo(float).eps
    rounding = eps * (2.0 * (head + tail) + 1.0 / (3.0 * b) + abs(bracket))
    error = 12.0 / b * (0.5 * truncation + rounding)
    if error > tol:
        raise PrecisionFloorError(
            f"mode sum at beta*={b} can only reach {error:.2e}, requested {tol:.2e}"
        )
    return EnergyResult(Dimension.D1, beta, Method.MODE_SUM, -12.0 / b * bracket, error)


# -- 3D ------------------------------------------------------------------------

def slab_kernel(x):
    """``((2x^2 - 1) sqrt(1 - x^2) + arcsin(x)/x) / x^2``; tends to 8/3 at 0."""
    x = np.minimum(np.asarray(x, dtype=float), 1.0)
    out = np.empty_like(x)
    small = x < _SLAB_SWITCH
    xs = x[small] ** 2
    acc = np.zeros_like(xs)
    for c in reversed(_SLAB_TAYLOR):
        acc = acc * xs + c
    out[small] = acc
    xl = x[~small]
    out[~small] = ((2 * xl * xl - 1) * _sqrt_one_minus_sq(xl) + np.arcsin(xl) / xl) / (xl * xl)
    return out


def eps3d_integral(beta_star, spec: QuadratureSpec = QuadratureSpec()) -> EnergyResult:
    """Single-integral 3D form.

    eps* = -(90/b^2) int_0^(1/b) [(2 b^2 t^3 - t) sqrt(1 - (b t)^2)
                                   + arcsin(b t)/b] / (e^(2 pi t) - 1) dt,

    evaluated as ``-90 int t^2 bose(t) slab_kernel(b t) dt`` so that the
    numerator's cancellation at small ``b t`` never occurs.
    """
    beta, b = _positive_beta(beta_star)
    if b == 0.0:
        return eps_undeformed(3)

    def f(t):
        return t * t * bose_weight(t) * slab_kernel(b * t)

    value, err = _integrate_t(f, b, spec, power=3)
    return EnergyResult(Dimension.D3, beta, Method.INTEGRAL, -90.0 * value, 90.0 * err)


def eps3d_double_integral(beta_star, spec: QuadratureSpec = QuadratureSpec()) -> EnergyResult:
    """Nested form: eps* = -360 int_0^(1/b) dt/(e^(2 pi t) - 1)
    int_(-t)^t x^2 sqrt(1 - (b x)^2) dx, both integrals numerical."""
    beta, b = _positive_beta(beta_star)
    if b == 0.0:
        return eps_undeformed(3)

    def integrand(x):
        return x * x * _sqrt_one_minus_sq(b * x)

    def inner(t):
        if t <= 0.0:
            return 0.0
        return quad.integrate_finite(integrand, 0.0, t, spec, quad.SQRT_RIGHT).value

    def f(ts):
        # (1/(e^(2 pi t) - 1)) * 2 int_0^t = bose(t) * 2 int_0^t / t
        values = np.array([inner(float(t)) for t in ts])
        safe = np.where(ts > 0, ts, 1.0)
        return np.where(ts > 0, 2.0 * bose_weight(ts) * values / safe, 0.0)

    value, err = _integrate_t(f, b, spec, power=3)
    return EnergyResult(
        Dimension.D3, beta, Method.DOUBLE_INTEGRAL, -360.0 * value, 360.0 * err
    )


# -- 2D ------------------------------------------------------------------------

def stripe_kernel(k):
    """``int_0^1 x^2 sqrt((1 - k^2 x^2)/(1 - x^2)) dx`` for ``0 <= k <= 1``.

    Uses ``(1/3)(2 - 1/k^2) E(k) + (1/3)(1/k^2 - 1) K(k)`` away from zero
    and the binomial series ``pi/4 + O(k^2)`` below ``_STRIPE_SWITCH``, where
    the elliptic combination loses digits to cancellation.
    """
    k = np.minimum(np.asarray(k, dtype=float), 1.0)
    out = np.empty_like(k)
    small = k < _STRIPE_SWITCH
    ks = k[small] ** 2
    acc = np.zeros_like(ks)
    for c in reversed(_STRIPE_TAYLOR):
        acc = acc * ks + c
    out[small] = acc
    for idx in np.flatnonzero(~small):
        kk = float(k[idx])
        kp2 = (1.0 - kk) * (1.0 + kk)
        if kp2 <= 0.0:
            out[idx] = 1.0 / 3.0
            continue
        K, E = elliptic_KE(kk, math.sqrt(kp2))
        inv = 1.0 / (kk * kk)
        out[idx] = ((2.0 - inv) * E + kp2 * inv * K) / 3.0
    return out


_EPS2D_SCALE = 16.0 * math.pi ** 2 / zeta(3)


def eps2d_integral(beta_star, spec: QuadratureSpec = QuadratureSpec()) -> EnergyResult:
    """eps* = -(16 pi^2/zeta(3)) int_0^(1/b) t^2/(e^(2 pi t) - 1) stripe_kernel(b t) dt."""
    beta, b = _positive_beta(beta_star)
    if b == 0.0:
        return eps_undeformed(2)

    def f(t):
        return t * bose_weight(t) * stripe_kernel(b * t)

    value, err = _integrate_t(f, b, spec, power=2)
    return EnergyResult(
        Dimension.D2, beta, Method.INTEGRAL, -_EPS2D_SCALE * value, _EPS2D_SCALE * err
    )


def eps2d_double_integral(beta_star, spec: QuadratureSpec = QuadratureSpec()) -> EnergyResult:
    """The 2D energy with the inner x-integral done by quadrature instead of
    elliptic integrals."""
    beta, b = _positive_beta(beta_star)
    if b == 0.0:
        return eps_undeformed(2)

    def inner(k):
        def g(x):
            return x * x * _sqrt_one_minus_sq(k * x) / _sqrt_one_minus_sq(x)
        return quad.integrate_finite(g, 0.0, 1.0, spec, quad.SQRT_RIGHT).value

    def f(ts):
        values = np.array([inner(b * float(t)) for t in ts])
        return ts * bose_weight(ts) * values

    value, err = _integrate_t(f, b, spec, power=2)
    return EnergyResult(
        Dimension.D2, beta, Method.DOUBLE_INTEGRAL, -_EPS2D_SCALE * value, _EPS2D_SCALE * err
    )
