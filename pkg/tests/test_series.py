import math

import numpy as np
import pytest

from deformed_casimir import energy
from deformed_casimir.energy.series import small_series_parts
from deformed_casimir.errors import DomainError


@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("b", [0.02, 0.1, 0.2, 0.3, 0.5, 0.8, 1.2, 1.5])
@pytest.mark.parametrize("order", [2, 6, 10, 16])
def test_small_series_within_three_estimates(dim, b, order):
    # the estimate is the first omitted term; same-signed tails can exceed it
    # by a modest factor, so the contract is three estimates
    res = energy.compute(dim, b, "series-small", order=order)
    truth = energy.compute(dim, b).eps_star
    assert abs(res.eps_star - truth) <= 3.0 * res.error_estimate


@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("b", [1.2, 2.0, 5.0, 10.0, 100.0])
def test_large_series_error_estimate_is_honest(dim, b):
    res = energy.compute(dim, b, "series-large")
    truth = energy.compute(dim, b)
    assert abs(res.eps_star - truth.eps_star) <= res.error_estimate + truth.error_estimate


@pytest.mark.parametrize("dim, order", [(1, 5), (3, 7), (2, 4)])
def test_large_series_fixed_order_honest(dim, order):
    res = energy.compute(dim, 4.0, "series-large", order=order)
    truth = energy.compute(dim, 4.0).eps_star
    assert abs(res.eps_star - truth) <= res.error_estimate
    assert res.order <= order


def test_printed_truncations():
    b = 0.3
    one = energy.eps1d_series_small(b, order=8).eps_star
    assert one == pytest.approx(-(1 - b ** 2 / 20 - b ** 4 / 168 - b ** 6 / 320 - 5 * b ** 8 / 1408), rel=1e-15)
    three = energy.eps3d_series_small(b, order=6).eps_star
    assert three == pytest.approx(-(1 - b ** 2 / 7 - 3 * b ** 4 / 112 - 5 * b ** 6 / 264), rel=1e-15)
    b = 7.0
    large = energy.eps1d_series_large(b, order=7).eps_star
    pi = math.pi
    want = -(3 / b - 4 / b ** 2 + pi ** 2 / (4 * b ** 3) - pi ** 4 / (120 * b ** 5) + pi ** 6 / (2016 * b ** 7))
    assert large == pytest.approx(want, rel=1e-15)


def test_optimal_truncation_caps_order():
    # at beta* = 1.5 the 3D terms start growing early
    _, used, omitted, _ = small_series_parts(3, 1.5, 16)
    assert used < 16 and omitted > 0


def test_series_domains():
    with pytest.raises(DomainError):
        energy.eps1d_series_large(1.0)
    with pytest.raises(DomainError):
        energy.eps3d_series_small(1.6)
    with pytest.raises(DomainError):
        energy.eps2d_series_small(0.5, order=3)
    with pytest.raises(DomainError):
        energy.eps2d_series_small(0.5, order=18)
    with pytest.raises(DomainError):
        energy.eps3d_series_large(3.0, order=2)


def test_series_at_zero_is_closed_form():
    for fn in (energy.eps1d_series_small, energy.eps2d_series_small, energy.eps3d_series_small):
        assert fn(0.0).eps_star == -1.0


def test_large_series_leading_terms():
    b = 1e4
    e2 = energy.eps2d_series_large(b, order=2).eps_star
    lead2 = -8 * math.pi / (1.2020569031595942 * b ** 2) * (math.pi / 2 - 2 / 3) / 3
    assert e2 == pytest.approx(lead2, rel=1e-15)
    e3 = energy.eps3d_series_large(b, order=3).eps_star
    assert e3 == pytest.approx(-45 / b ** 3 * 0.5 * (math.log(2) - 0.25), rel=1e-15)


def test_series_converge_toward_integral_with_order():
    truth = energy.compute(3, 0.3).eps_star
    errs = [abs(energy.eps3d_series_small(0.3, order=o).eps_star - truth) for o in (2, 4, 6, 8)]
    assert all(np.diff(errs) < 0)
