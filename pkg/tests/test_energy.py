import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deformed_casimir import energy
from deformed_casimir.energy import coefficients as coef
from deformed_casimir.energy.types import BetaStar, Dimension, Method, PhysicalSetup
from deformed_casimir.errors import DomainError, PrecisionFloorError
from deformed_casimir.quadrature import QuadratureSpec

mpmath.mp.dps = 30


def _mp_eps(dim, b):
    """Independent evaluation of the integral forms with mpmath tanh-sinh."""
    b = mpmath.mpf(b)
    top = 1 / b
    bose = lambda t: 1 / mpmath.expm1(2 * mpmath.pi * t)
    root = lambda x: mpmath.sqrt(max(mpmath.mpf(0), 1 - x * x))
    if dim == 1:
        f = lambda t: t * root(b * t) * bose(t)
        return float(-24 * mpmath.quad(f, [0, top]))
    if dim == 3:
        def f(t):
            x = min(b * t, mpmath.mpf(1))
            return ((2 * b ** 2 * t ** 3 - t) * root(x) + mpmath.asin(x) / b) * bose(t)
        return float(-90 / b ** 2 * mpmath.quad(f, [0, top]))

    def f(t):
        m = min((b * t) ** 2, mpmath.mpf(1))
        F = mpmath.pi / 4 * mpmath.hyp2f1(-0.5, 1.5, 2, m)
        return t * t * bose(t) * F
    return float(-16 * mpmath.pi ** 2 / mpmath.zeta(3) * mpmath.quad(f, [0, top]))


@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("b", [0.3, 1.0, 4.0, 20.0])
def test_integral_against_mpmath(dim, b):
    got = energy.compute(dim, b)
    want = _mp_eps(dim, b)
    assert got.eps_star == pytest.approx(want, rel=1e-11)
    assert abs(got.eps_star - want) <= 10 * got.error_estimate + 1e-14 * abs(want)


def test_reference_value_at_ten():
    assert energy.eps1d_integral(10).eps_star == pytest.approx(-0.26245933103695696, rel=1e-13)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_undeformed_limit_every_method(dim):
    for m in energy.methods_for(dim):
        res = energy.compute(dim, 0.0, m.value)
        assert res.eps_star == -1.0 and res.method is Method.CLOSED_FORM


def test_method_availability():
    assert energy.methods_for(1) == [Method.INTEGRAL, Method.MODE_SUM,
                                     Method.SERIES_SMALL, Method.SERIES_LARGE]
    assert Method.DOUBLE_INTEGRAL in energy.methods_for(3)
    with pytest.raises(DomainError):
        energy.compute(2, 0.5, "mode-sum")
    with pytest.raises(DomainError):
        energy.compute(1, 0.5, "closed-form")
    with pytest.raises(ValueError):
        energy.compute(1, 0.5, "simpson")


@pytest.mark.parametrize("bad", [-1.0, math.nan, math.inf, "1", True])
def test_beta_star_validation(bad):
    with pytest.raises(DomainError):
        BetaStar(bad)


def test_mode_sum_precision_floor():
    with pytest.raises(PrecisionFloorError):
        energy.eps1d_mode_sum(1e-4)
    loose = energy.eps1d_mode_sum(1e-4, tol=1e-6)
    assert abs(loose.eps_star - energy.eps1d_integral(1e-4).eps_star) <= loose.error_estimate


@pytest.mark.parametrize("b", [0.01, 0.1, 0.7, 3.0, 50.0, 1e4])
def test_mode_sum_agrees(b):
    tol = 1e-10 if b >= 0.01 else 1e-7
    a = energy.eps1d_integral(b).eps_star
    m = energy.eps1d_mode_sum(b, tol=tol)
    assert abs(a - m.eps_star) <= 10 * m.error_estimate + 1e-12 * abs(a)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_monotone_and_bounded(dim):
    grid = np.geomspace(1e-2, 1e3, 50)
    values = np.array([energy.compute(dim, b).eps_star for b in grid])
    assert np.all(np.diff(values) > 0)
    assert np.all((values > -1) & (values < 0))


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e3), st.sampled_from([1, 2, 3]))
def test_value_in_open_interval(b, dim):
    assert -1 < energy.compute(dim, b).eps_star < 0


def test_kernels_match_direct_formulas():
    x = np.array([0.01, 0.049, 0.051, 0.3, 0.9, 0.999])
    direct = ((2 * x * x - 1) * np.sqrt(1 - x * x) + np.arcsin(x) / x) / x ** 2
    np.testing.assert_allclose(energy.slab_kernel(x)[3:], direct[3:], rtol=1e-14)
    for xi, got in zip(x[:3], energy.slab_kernel(x[:3])):
        xm = mpmath.mpf(float(xi))
        want = ((2 * xm ** 2 - 1) * mpmath.sqrt(1 - xm ** 2) + mpmath.asin(xm) / xm) / xm ** 2
        assert got == pytest.approx(float(want), rel=1e-14)
    assert energy.slab_kernel(np.array([0.0, 1.0])) == pytest.approx([8 / 3, math.pi / 2])

    for k in (0.0, 0.1, 0.249, 0.251, 0.6, 0.99, 1.0):
        m = mpmath.mpf(k) ** 2
        want = mpmath.quad(lambda x: x ** 2 * mpmath.sqrt((1 - m * x * x) / (1 - x * x)), [0, 1])
        assert energy.stripe_kernel(np.array([k]))[0] == pytest.approx(float(want), rel=1e-13)


def test_coefficient_generators():
    assert coef.mode_tail_coefficients(4)[1:] == [0.25, -0.125, 5 / 64, -7 / 128]
    assert [float(c) for c in coef.slab_kernel_taylor(2)] == pytest.approx([8 / 3, -4 / 5, -1 / 7])
    assert float(coef.stripe_kernel_taylor(0)[0]) * math.pi == pytest.approx(math.pi / 4)
    assert coef.binom_half(2) == -0.125


def test_moments_closed_vs_quadrature():
    for n in (0, 1, 2, 4, 6, 8):
        assert coef.coefficient_I(n) == pytest.approx(coef.coefficient_I_quadrature(n), rel=1e-12)
    with pytest.raises(DomainError):
        coef.coefficient_I(3)
    for n in (0, 1, 2):
        assert coef.coefficient_J(n) == pytest.approx(coef.coefficient_J_quadrature(n), rel=1e-12)


@pytest.mark.parametrize("n", [3, 4])
def test_J_quadrature_against_mpmath(n):
    inner = lambda x: mpmath.quad(lambda y: y ** (n + 1) * mpmath.sqrt(1 - x * x * y * y), [0, 1])
    want = mpmath.quad(lambda x: x * x / mpmath.sqrt(1 - x * x) * inner(x), [0, 1])
    assert coef.coefficient_J(n) == pytest.approx(float(want), rel=1e-11)


def test_large_3d_two_routes():
    a, b = coef.large_3d(20), coef.large_3d_via_moments(20)
    for p in a:
        assert a[p] == pytest.approx(b[p], rel=1e-12)


def test_physical_units():
    setup = PhysicalSetup(beta=2 / math.pi, a=1.0)
    assert energy.beta_star_from_physical(setup).value == pytest.approx(1.0, rel=1e-16)
    zero = PhysicalSetup(beta=0.0, a=1.0)
    res = energy.compute(1, energy.beta_star_from_physical(zero))
    assert energy.eps_physical(res, zero) == pytest.approx(-math.pi / 24)
    res3 = energy.compute(3, 0.0)
    assert energy.eps_physical(res3, PhysicalSetup(0.0, 2.0)) == pytest.approx(-math.pi ** 2 / (720 * 16))
    with pytest.raises(DomainError):
        PhysicalSetup(beta=1.0, a=0.0)
    with pytest.raises(DomainError):
        PhysicalSetup(beta=-1.0, a=1.0)


def test_oscillator_helpers():
    assert energy.vacuum_mode_energy(0.0) == 0.5
    assert energy.oscillator_level(0, 0.3) == pytest.approx(energy.vacuum_mode_energy(0.3))
    with pytest.raises(DomainError):
        energy.oscillator_level(-1, 0.1)


def test_spec_passthrough():
    loose = energy.compute(2, 0.7, spec=QuadratureSpec(rel_tol=1e-6))
    tight = energy.compute(2, 0.7)
    assert abs(loose.eps_star - tight.eps_star) <= 1e-6 * abs(tight.eps_star)
    assert loose.dimension is Dimension.D2
