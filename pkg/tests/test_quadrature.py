import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deformed_casimir.errors import ConvergenceError, DomainError, NonFiniteEvaluation
from deformed_casimir.quadrature import (
    SMOOTH,
    SQRT_LEFT,
    SQRT_RIGHT,
    QuadratureSpec,
    integrate_finite,
    integrate_semi_infinite,
)


def test_polynomial_exact():
    res = integrate_finite(lambda x: x ** 5, 0.0, 1.0)
    assert res.value == pytest.approx(1 / 6, rel=1e-15)
    assert res.evaluations == 15


def test_bose_moments():
    res = integrate_semi_infinite(lambda t: t / np.expm1(2 * np.pi * t), 1e-300, decay_scale=0.2)
    assert res.value == pytest.approx(1 / 24, rel=1e-12)
    res = integrate_semi_infinite(lambda t: t ** 3 / np.expm1(2 * np.pi * t), 1e-300, decay_scale=0.5)
    assert res.value == pytest.approx(1 / 240, rel=1e-12)


def test_exponential_half_line():
    res = integrate_semi_infinite(lambda t: np.exp(-t), 0.0)
    assert res.value == pytest.approx(1.0, rel=1e-12)
    assert res.error_estimate < 1e-11


def test_quarter_circle_with_sqrt_flag():
    res = integrate_finite(lambda x: np.sqrt(1 - x * x), 0.0, 1.0, endpoint_regularity=SQRT_RIGHT)
    assert res.value == pytest.approx(math.pi / 4, rel=1e-14)
    assert res.evaluations == 15


def test_left_singular_flag():
    res = integrate_finite(lambda x: 1 / np.sqrt(x), 0.0, 1.0, endpoint_regularity=SQRT_LEFT)
    assert res.value == pytest.approx(2.0, rel=1e-13)


def test_inverse_sqrt_weight_never_evaluated_at_endpoint():
    # x^2 / sqrt(1 - x^2) diverges at 1; the substitution removes it
    res = integrate_finite(lambda x: x * x / np.sqrt(1 - x * x), 0.0, 1.0,
                           endpoint_regularity=SQRT_RIGHT)
    assert res.value == pytest.approx(math.pi / 4, rel=1e-14)


def test_sqrt_substitution_against_brute_force_midpoint():
    f = lambda x: x ** 2 * np.sqrt((1 - 0.7 * x) * (1 + 0.7 * x)) * np.sqrt(1 - x)
    n = 10_000_000
    x = (np.arange(n) + 0.5) / n
    brute = f(x).sum() / n
    res = integrate_finite(f, 0.0, 1.0, endpoint_regularity=SQRT_RIGHT)
    assert res.value == pytest.approx(brute, rel=1e-9)


def test_error_estimate_is_honest():
    res = integrate_finite(lambda x: np.cos(30 * x), 0.0, 2.0, QuadratureSpec(rel_tol=1e-6))
    assert abs(res.value - math.sin(60) / 30) <= res.error_estimate


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_non_finite_integrand():
    with pytest.raises(NonFiniteEvaluation):
        integrate_finite(lambda x: 1 / (x - 0.5), 0.0, 1.0)


def test_non_finite_is_a_convergence_error():
    assert issubclass(NonFiniteEvaluation, ConvergenceError)


def test_budget_exhaustion():
    spec = QuadratureSpec(rel_tol=1e-14, max_intervals=3)
    with pytest.raises(ConvergenceError):
        integrate_finite(lambda x: np.sin(200 * x) ** 2, 0.0, 10.0, spec)


@pytest.mark.parametrize("kwargs", [
    {"rel_tol": -1.0}, {"abs_tol": 0.0, "rel_tol": 0.0}, {"max_subdivisions": 0},
])
def test_spec_validation(kwargs):
    with pytest.raises(DomainError):
        QuadratureSpec(**kwargs)


def test_bad_limits_and_flag():
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 1.0, 0.0)
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 0.0, math.inf)
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 0.0, 1.0, endpoint_regularity="log")


def test_deterministic():
    f = lambda x: np.exp(-x) * np.sin(5 * x) ** 2
    a = integrate_finite(f, 0.0, 7.0)
    b = integrate_finite(f, 0.0, 7.0)
    assert a == b


@settings(max_examples=50, deadline=None)
@given(
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=0.1, max_value=3),
)
def test_linearity(alpha, gamma, w):
    f = lambda x: np.exp(-x * x)
    g = lambda x: np.cos(w * x)
    lhs = integrate_finite(lambda x: alpha * f(x) + gamma * g(x), 0.0, 2.0).value
    rhs = alpha * integrate_finite(f, 0.0, 2.0).value + gamma * integrate_finite(g, 0.0, 2.0).value
    assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=0.01, max_value=4))
def test_additivity(a, width):
    f = lambda x: np.exp(np.sin(x))
    mid, b = a + width / 3, a + width
    whole = integrate_finite(f, a, b).value
    parts = integrate_finite(f, a, mid).value + integrate_finite(f, mid, b).value
    assert whole == pytest.approx(parts, rel=1e-11)
