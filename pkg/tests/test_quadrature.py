import math

import mpmath
import numpy as np
import pytest

from pndsum.errors import QuadratureError, ValidationError
from pndsum.quadrature import (
    Integrand,
    exp_power,
    exp_ratio_log,
    exp_sqrt_tlog,
    envelope_tail_upper,
    gamma_upper_tail_bound,
    integrate_decreasing_to_inf,
    integrate_finite,
    monomial,
    recip_log,
    series_upper_by_integral,
    shifted_quartic,
)


def test_constant_integral():
    res = integrate_finite(monomial(1.0, 0.0), 0.0, 1.0)
    assert abs(res.value - 1.0) < 1e-14
    assert res.error_bound <= 1e-12
    assert res.upper_value >= 1.0 - 1e-14


def test_linear_exactness():
    res = integrate_finite(monomial(1.0, 1.0), 0.0, 1.0)
    assert abs(res.value - 0.5) < 1e-14


def test_recip_log_against_trapezoid_oracle(fx):
    res = integrate_finite(recip_log(), 2.0, math.exp(2.0), rel_tol=1e-12)
    assert abs(res.value - fx["li_e2_trapezoid"]) < 1e-10


def test_monotone_flag_rejected_when_false():
    with pytest.raises(ValidationError):
        integrate_finite(monomial(1.0, 2.0), -1.0, 1.0, regularity="monotone")


def test_inverse_square_to_infinity():
    res = integrate_decreasing_to_inf(
        monomial(1.0, -2.0), 1.0, envelope=monomial(1.0, -2.0), cutoff=1e6
    )
    assert abs(res.value - 1.0) < 1e-8
    assert res.upper_value >= 1.0 - 1e-12


def test_exp_power_tail_small():
    res = integrate_decreasing_to_inf(
        exp_power(1.0, 0.4), 1e4, envelope=exp_power(1.0, 0.4), cutoff=2e5
    )
    assert res.upper_value <= 1e-14
    assert res.value > 0


def test_exp_power_stronger_envelope_consistent():
    res = integrate_decreasing_to_inf(
        exp_power(3.0, 0.4), 5000.0, envelope=exp_power(3.0, 0.4), cutoff=5e4
    )
    assert 0 < res.upper_value < 1e-35


def test_envelope_rejected_when_invalid():
    with pytest.raises(ValidationError):
        integrate_decreasing_to_inf(
            monomial(1.0, -1.5), 1.0, envelope=exp_power(1.0, 1.0), cutoff=100.0
        )


def test_series_geometric():
    bound = series_upper_by_integral(
        exp_power(math.log(2.0), 1.0), 0, envelope=exp_power(math.log(2.0), 1.0), cutoff=100.0
    )
    assert bound >= 2.0
    assert bound < 2.5


def test_series_inverse_square():
    bound = series_upper_by_integral(
        monomial(1.0, -2.0), 1, envelope=monomial(1.0, -2.0), cutoff=1e6
    )
    assert bound >= math.pi**2 / 6
    assert bound < 2.1


@pytest.mark.parametrize("k0", [5000, 10**4])
def test_series_dominates_partial_sum_plus_tail(k0):
    # integral-comparison bound vs direct partial summation closed by the
    # same envelope tail, at both truncation points the tail chain uses
    alpha = 4 * math.log(4.0)
    cutoff = 1e7
    envelope = monomial((1 + 5 / cutoff) ** 4, 4 - alpha)
    bound = series_upper_by_integral(
        shifted_quartic(5.0, alpha), k0, envelope=envelope, cutoff=cutoff
    )
    k_stop = 10**5
    direct = math.fsum((k + 5) ** 4 * k ** (-alpha) for k in range(k0, k_stop))
    tail = series_upper_by_integral(
        shifted_quartic(5.0, alpha), k_stop, envelope=envelope, cutoff=cutoff
    )
    assert bound >= direct
    assert bound <= (direct + tail) * 1.01  # and not wildly loose


def test_series_rejects_increasing_terms():
    with pytest.raises(ValidationError):
        series_upper_by_integral(
            monomial(1.0, 2.0), 1, envelope=monomial(1.0, -2.0), cutoff=1e4
        )


def test_depth_limit_raises():
    with pytest.raises(QuadratureError):
        integrate_finite(monomial(1.0, -2.0), 1.0, 2.0, rel_tol=0.0, abs_tol=0.0)


def test_gamma_upper_tail_bound_dominates():
    mpmath.mp.dps = 40
    for a, x in [(2.5, 40.0), (2.0, 300.0), (1.0, 5.0), (2.5, 12.0)]:
        true = float(mpmath.gammainc(a, x))
        bound = gamma_upper_tail_bound(a, x)
        assert bound >= true
        assert bound <= true * 1.5 + 1e-300


def _fixed_simpson(f: Integrand, a: float, b: float, panels: int) -> float:
    xs = np.linspace(a, b, 2 * panels + 1)
    ys = f(xs)
    h = (b - a) / panels
    return float(h / 6 * (ys[0] + ys[-1] + 4 * ys[1::2].sum() + 2 * ys[2:-1:2].sum()))


@pytest.mark.parametrize(
    "f,a,b",
    [
        (recip_log(), 1.03, 30.0),
        (shifted_quartic(5.0, 4 * math.log(4.0)), 5000.0, 1e6),
        (exp_power(1.0, 0.4), 1e4, 1e5),
        (exp_ratio_log(8.0), 5000.0, 30000.0),
        (exp_sqrt_tlog(), 32.0, 1e4),
        (monomial(2.0, -1.5), 1.0, 100.0),
    ],
)
def test_upper_value_dominates_fine_grid(f, a, b):
    # the fixed reference grid carries its own O(h^4) truncation, hence
    # the 1e-11 relative allowance on the comparison
    res = integrate_finite(f, a, b, rel_tol=1e-10)
    fine = _fixed_simpson(f, a, b, 200_000)
    assert res.upper_value >= fine - 1e-11 * abs(fine)
    assert abs(res.value - fine) <= 1e-9 * abs(fine) + res.error_bound


def test_unknown_shape_rejected():
    with pytest.raises(ValidationError):
        Integrand("sine", ())(np.array([1.0]))
