"""Adaptive Gauss-Kronrod quadrature with square-root endpoint handling.

Integrands are called with a 1-D numpy array of abscissae and must return
an array of the same shape.

Endpoints flagged ``sqrt_singular_left`` / ``sqrt_singular_right`` are
treated with the substitution ``x = a + (b - a) sin(theta)`` (mirrored for
the left end), under which ``sqrt(b - x)`` becomes smooth in ``theta`` and
``1/sqrt(b - x)`` is cancelled by the Jacobian.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, NonFiniteEvaluation

SMOOTH = "smooth"
SQRT_LEFT = "sqrt_singular_left"
SQRT_RIGHT = "sqrt_singular_right"
_REGULARITIES = (SMOOTH, SQRT_LEFT, SQRT_RIGHT)

_EPS = np.finfo(float).eps

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[7] = _WG[3]
_GAUSS_W[[9, 11, 13]] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy request for the integration engine.

    ``max_subdivisions`` bounds the bisection depth of any single interval;
    ``max_intervals`` bounds the total work.
    """

    abs_tol: float = 0.0
    rel_tol: float = 1e-12
    max_subdivisions: int = 60
    max_intervals: int = 5000

    def __post_init__(self):
        if not (self.abs_tol >= 0 and self.rel_tol >= 0):
            raise DomainError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise DomainError("at least one tolerance must be positive")
        if self.max_subdivisions < 1 or self.max_intervals < 1:
            raise DomainError("subdivision limits must be positive")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def _gk15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(center + half * _NODES), dtype=float)
    if not np.all(np.isfinite(fx)):
        bad = (center + half * _NODES)[~np.isfinite(fx)]
        raise NonFiniteEvaluation(f"integrand not finite at x = {bad[0]!r}")
    kronrod = half * float(_KRONROD_W @ fx)
    gauss = half * float(_GAUSS_W @ fx)
    resabs = abs(half) * float(_KRONROD_W @ np.abs(fx))
    mean = kronrod / (2.0 * half) if half else 0.0
    resasc = abs(half) * float(_KRONROD_W @ np.abs(fx - mean))
    err = abs(kronrod - gauss)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return kronrod, err


def _adaptive(g, lo, hi, spec):
    value, err = _gk15(g, lo, hi)
    evaluations = 15
    # heap entries: (-error, insertion order, a, b, value, error, depth)
    heap = [(-err, 0, lo, hi, value, err, 0)]
    frozen = []
    total, total_err = value, err
    counter = 1
    while total_err > spec.tolerance(total):
        if not heap:
            break
        if counter >= spec.max_intervals:
            break
        _, _, a, b, v, e, depth = heapq.heappop(heap)
        if depth >= spec.max_subdivisions:
            frozen.append((a, b, v, e))
            continue
        mid = 0.5 * (a + b)
        v1, e1 = _gk15(g, a, mid)
        v2, e2 = _gk15(g, mid, b)
        evaluations += 30
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, counter, a, mid, v1, e1, depth + 1))
        heapq.heappush(heap, (-e2, counter + 1, mid, b, v2, e2, depth + 1))
        counter += 2

    pieces = sorted([(a, b, v, e) for _, _, a, b, v, e, _ in heap] + frozen)
    value = math.fsum(p[2] for p in pieces)
    err = math.fsum(p[3] for p in pieces)
    if err > spec.tolerance(value):
        raise ConvergenceError(
            f"quadrature did not converge: estimate {value!r}, "
            f"error {err:.3g} > tolerance {spec.tolerance(value):.3g} "
            f"after {evaluations} evaluations"
        )
    return QuadratureResult(value, err, evaluations)


def integrate_finite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
    endpoint_regularity: str = SMOOTH,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` to the accuracy requested in ``spec``.

    Parameters
    ----------
    f : callable
        Vectorised integrand.  It is never evaluated at a flagged singular
        endpoint.
    a, b : float
        Finite limits with ``a < b``.
    spec : QuadratureSpec
    endpoint_regularity : str
        ``"smooth"``, ``"sqrt_singular_left"`` or ``"sqrt_singular_right"``.

    Returns
    -------
    QuadratureResult

    Raises
    ------
    ConvergenceError
        The error estimate stayed above tolerance when the subdivision
        budget ran out.
    NonFiniteEvaluation
        ``f`` produced NaN or infinity at a node.
    """
    if endpoint_regularity not in _REGULARITIES:
        raise DomainError(f"unknown endpoint regularity {endpoint_regularity!r}")
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a}, {b}]")

    width = b - a
    if endpoint_regularity == SMOOTH:
        return _adaptive(f, a, b, spec)
    if endpoint_regularity == SQRT_RIGHT:
        def g(theta):
            return f(a + width * np.sin(theta)) * (width * np.cos(theta))
    else:
        def g(theta):
            return f(b - width * np.sin(theta)) * (width * np.cos(theta))
    return _adaptive(g, 0.0, 0.5 * math.pi, spec)


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    spec: QuadratureSpec = QuadratureSpec(),
    decay_scale: float = 1.0,
    max_segments: int = 10000,
) -> QuadratureResult:
    """Integrate an exponentially decaying ``f`` over ``[a, inf)``.

    The half-line is cut into segments of width ``4 * decay_scale``.
    Integration stops once a segment contributes less than a tenth of the
    tolerance and the remaining tail, bounded from the observed decay rate
    and the decay scale, is equally small.  The tail bound is added to the
    error estimate.
    """
    if not (decay_scale > 0 and math.isfinite(decay_scale)):
        raise DomainError(f"decay_scale must be positive, got {decay_scale}")
    width = 4.0 * decay_scale
    values, errors = [], []
    evaluations = 0
    previous = None
    left = a
    for _ in range(max_segments):
        running = math.fsum(values)
        seg_spec = QuadratureSpec(
            abs_tol=0.1 * spec.tolerance(running),
            rel_tol=spec.rel_tol,
            max_subdivisions=spec.max_subdivisions,
            max_intervals=spec.max_intervals,
        ) if running else spec
        res = _adaptive(f, left, left + width, seg_spec)
        values.append(res.value)
        errors.append(res.error_estimate)
        evaluations += res.evaluations
        left += width

        contribution = abs(res.value)
        tol = spec.tolerance(math.fsum(values))
        if previous is not None and previous > 0 and contribution < previous:
            ratio = contribution / previous
            edge = abs(float(np.asarray(f(np.array([left])))[0]))
            tail = max(contribution * ratio / (1.0 - ratio), edge * decay_scale)
            if contribution < 0.1 * tol and tail < 0.1 * tol:
                value = math.fsum(values)
                err = math.fsum(errors) + tail
                return QuadratureResult(value, err, evaluations + 1)
        previous = contribution
    raise ConvergenceError(
        f"semi-infinite integral did not settle within {max_segments} segments"
    )
