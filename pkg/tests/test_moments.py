import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats, sampled_from
from scipy import special

from gpibound.bounds import same_sign_bound
from gpibound.errors import DomainError
from gpibound.moments import (
    MomentSpec, abs_moment_1d, gap, gap_integrand, gap_integrand_at_one, gap_integrand_slope,
    gap_via_3f2, gap_via_integral, product_moment, product_moment_rho_one, product_moment_series,
    product_of_marginals,
)

exponents = floats(-0.95, 5.0)
correlations = floats(-0.98, 0.98)
scales = floats(0.25, 4.0)


def arcsine_moment(rho, sigma1=1.0, sigma2=1.0):
    # E|X1 X2| = (2/π) σ1 σ2 (√(1-ρ²) + ρ arcsin ρ)
    return 2 / math.pi * sigma1 * sigma2 * (math.sqrt(1 - rho * rho) + rho * math.asin(rho))


def test_moment_spec_validation():
    for args in [(0, 1, 1, 1, 0.5), (1, -1, 1, 1, 0.5), (1, 1, -1, 1, 0.5),
                 (1, 1, 1, -1.5, 0.5), (1, 1, 1, 1, 1.01), (1, 1, 1, 1, float("nan"))]:
        with pytest.raises(DomainError):
            MomentSpec(*args)
    spec = MomentSpec(1, 2, 0.5, 3, -1.0)
    assert spec.degenerate
    assert spec.swapped() == MomentSpec(2, 1, 3, 0.5, -1.0)


@pytest.mark.parametrize("sigma, alpha, expected", [
    (1.0, 1.0, math.sqrt(2 / math.pi)),
    (1.0, 2.0, 1.0),
    (2.0, 2.0, 4.0),
    (1.0, 4.0, 3.0),
    (0.5, 6.0, 15 * 0.5 ** 6),
    (1.0, 0.0, 1.0),
    (1.0, -0.5, 2 ** -0.25 * special.gamma(0.25) / math.sqrt(math.pi)),
    (1.0, -0.9, 2 ** -0.45 * special.gamma(0.05) / math.sqrt(math.pi)),
    (3.0, 1.5, 3 ** 1.5 * 2 ** 0.75 * special.gamma(1.25) / math.sqrt(math.pi)),
])
def test_abs_moment_1d(sigma, alpha, expected):
    assert abs_moment_1d(sigma, alpha) == pytest.approx(expected, rel=1e-13)


def test_abs_moment_1d_singular_exponent():
    assert abs_moment_1d(1, -0.9) == pytest.approx(8.041, rel=1e-3)
    with pytest.raises(DomainError):
        abs_moment_1d(1, -1)
    with pytest.raises(DomainError):
        abs_moment_1d(0, 1)


def test_product_of_marginals():
    spec = MomentSpec(2.0, 0.5, 1.0, 3.0, 0.3)
    assert product_of_marginals(spec) == pytest.approx(abs_moment_1d(2.0, 1.0) * abs_moment_1d(0.5, 3.0), rel=1e-14)


@pytest.mark.parametrize("rho", [0.0, 0.1, 0.5, -0.5, 0.9, 0.99])
def test_product_moment_arcsine_law(rho):
    assert product_moment(MomentSpec(1, 1, 1, 1, rho)) == pytest.approx(arcsine_moment(rho), rel=1e-13)


@pytest.mark.parametrize("rho", [0.0, 0.3, 0.6, -0.8])
def test_product_moment_isserlis(rho):
    assert product_moment(MomentSpec(1.5, 0.5, 2, 2, rho)) == pytest.approx(
        1.5 ** 2 * 0.5 ** 2 * (1 + 2 * rho ** 2), rel=1e-13)
    # E X1² X2⁴ = σ1² σ2⁴ (3 + 12 ρ²)
    assert product_moment(MomentSpec(1.0, 2.0, 2, 4, rho)) == pytest.approx(
        16 * (3 + 12 * rho ** 2), rel=1e-13)


def test_product_moment_rejects_degenerate():
    with pytest.raises(DomainError):
        product_moment(MomentSpec(1, 1, 1, 1, 1.0))


def test_product_moment_series_error_estimate():
    value, error = product_moment_series(MomentSpec(1, 1, 1, 1, 0.5))
    assert value == pytest.approx(arcsine_moment(0.5), rel=1e-13)
    assert 0 <= error < 1e-12
    assert product_moment_series(MomentSpec(1, 1, 1, 1, 1.0)) == (1.0, 0.0)


def test_product_moment_rho_one():
    assert product_moment_rho_one(MomentSpec(1, 1, 1, 1, 1.0)) == 1.0
    assert product_moment_rho_one(MomentSpec(2, 2, 1, 1, -1.0)) == pytest.approx(4.0)
    assert product_moment_rho_one(MomentSpec(1, 1, 2, 3, 1.0)) == pytest.approx(abs_moment_1d(1, 5))
    assert product_moment_rho_one(MomentSpec(1, 1, -0.6, -0.5, 1.0)) == math.inf
    with pytest.raises(DomainError):
        product_moment_rho_one(MomentSpec(1, 2, 1, 1, 1.0))
    with pytest.raises(DomainError):
        product_moment_rho_one(MomentSpec(1, 1, 1, 1, 0.5))


@pytest.mark.parametrize("alpha1, alpha2", [(1, 1), (2, 3), (-0.3, -0.2)])
def test_product_moment_continuous_at_unit_correlation(alpha1, alpha2):
    limit = product_moment_rho_one(MomentSpec(1, 1, alpha1, alpha2, 1.0))
    deviations = [abs(product_moment(MomentSpec(1, 1, alpha1, alpha2, 1 - 10.0 ** -k)) - limit)
                  for k in range(2, 7)]
    assert all(later < earlier for earlier, later in zip(deviations, deviations[1:]))
    if alpha1 > 0:
        assert deviations[-1] < 1e-3


def test_gap_values():
    assert gap(MomentSpec(1, 1, 1, 1, 0.5)) == pytest.approx(arcsine_moment(0.5) - 2 / math.pi, rel=1e-12)
    assert gap(MomentSpec(1, 1, 1, 1, 0.5)) == pytest.approx(0.0813758, abs=1e-7)
    assert gap(MomentSpec(1, 1, 2, 2, 0.5)) == pytest.approx(0.5, rel=1e-14)
    assert gap(MomentSpec(1, 1, 1, 1, 0.0)) == 0.0
    assert gap(MomentSpec(1, 1, 1, 1, 1.0)) == pytest.approx(1 - 2 / math.pi, rel=1e-14)
    assert gap(MomentSpec(1, 1, -0.6, -0.5, 1.0)) == math.inf


def test_gap_opposite_signs_is_negative():
    assert gap(MomentSpec(1, 1, -0.5, 2, 0.5)) == pytest.approx(-0.21501, abs=1e-5)
    assert gap(MomentSpec(1, 1, -0.5, 1, 0.5)) < 0


@pytest.mark.parametrize("alpha1, alpha2, rho", [(1, 1, 1e-7), (0.5, 3, 1e-6), (-0.5, -0.1, 1e-8), (-0.5, 2, 1e-7)])
def test_gap_small_correlation_keeps_relative_accuracy(alpha1, alpha2, rho):
    spec = MomentSpec(1, 1, alpha1, alpha2, rho)
    value = gap(spec)
    assert value != 0.0
    assert value == pytest.approx(gap_via_3f2(spec), rel=1e-12)


def test_gap_small_correlation_exact_cases():
    assert gap(MomentSpec(1, 1, 2, 2, 1e-7)) == pytest.approx(2e-14, rel=1e-12)
    spec = MomentSpec(1, 1, 4, 4, 1e-8)
    value = gap(spec)
    # E X1^4 X2^4 - 9 = 72 rho^2 + 24 rho^4
    assert value == pytest.approx(72e-16, rel=1e-12)
    assert value >= same_sign_bound(spec).value * (1 - 1e-12)


@pytest.mark.parametrize("alpha1, alpha2", [(1, 1), (0.5, 4.5), (-0.5, -0.1), (-0.9, -0.05), (-0.9, 2), (-0.5, 1), (3, -0.2)])
def test_gap_is_monotone_in_rho_squared(alpha1, alpha2):
    rhos = np.linspace(0.0, 0.99, 100)
    values = np.array([gap(MomentSpec(1, 1, alpha1, alpha2, rho)) for rho in rhos])
    steps = np.diff(values) * math.copysign(1.0, alpha1 * alpha2)
    noise = 1e-13 * product_of_marginals(MomentSpec(1, 1, alpha1, alpha2, 0.5))
    assert np.all(steps >= -noise)
    negated = [gap(MomentSpec(1, 1, alpha1, alpha2, -rho)) for rho in rhos]
    np.testing.assert_array_equal(negated, values)


@settings(max_examples=150, deadline=None)
@given(exponents, exponents, correlations, scales, scales)
def test_gap_symmetries(alpha1, alpha2, rho, sigma1, sigma2):
    spec = MomentSpec(sigma1, sigma2, alpha1, alpha2, rho)
    value = gap(spec)
    noise = 1e-13 * product_of_marginals(spec)
    assert gap(spec.swapped()) == pytest.approx(value, rel=1e-12, abs=noise)
    assert gap(MomentSpec(sigma1, sigma2, alpha1, alpha2, -rho)) == value
    unit = gap(MomentSpec(1.0, 1.0, alpha1, alpha2, rho))
    assert value == pytest.approx(sigma1 ** alpha1 * sigma2 ** alpha2 * unit, rel=1e-11, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(exponents, exponents, correlations)
def test_gap_sign_follows_exponent_signs(alpha1, alpha2, rho):
    spec = MomentSpec(1, 1, alpha1, alpha2, rho)
    value = gap(spec)
    noise = 1e-13 * product_of_marginals(spec)
    if alpha1 * alpha2 > 0:
        assert value >= -noise
    elif alpha1 * alpha2 < 0:
        assert value <= noise


@pytest.mark.parametrize("alpha1, alpha2", [(1, 1), (-0.5, -0.1), (0.5, 4.5), (3, 2.5), (-0.9, 2)])
@pytest.mark.parametrize("rho", [0.25, 0.75, 0.95])
def test_gap_three_routes_agree(alpha1, alpha2, rho):
    spec = MomentSpec(1.3, 0.7, alpha1, alpha2, rho)
    direct = gap(spec)
    assert gap_via_3f2(spec) == pytest.approx(direct, rel=1e-10, abs=1e-15)
    assert gap_via_integral(spec) == pytest.approx(direct, rel=1e-9, abs=1e-15)


def test_gap_routes_at_zero_correlation():
    spec = MomentSpec(1, 1, 1, 3, 0.0)
    assert gap_via_3f2(spec) == 0.0
    assert gap_via_integral(spec) == 0.0
    with pytest.raises(DomainError):
        gap_via_3f2(MomentSpec(1, 1, 1, 1, 1.0))


def test_gap_integrand():
    spec = MomentSpec(1, 1, 1, 1, 0.5)
    assert gap_integrand(spec, 0.0) == 1.0
    # F(1/2, 1/2; 3/2; h) = arcsin(√h) / √h
    assert gap_integrand(spec, 0.25) == pytest.approx(math.asin(0.5) / 0.5, rel=1e-13)


@pytest.mark.parametrize("alpha1, alpha2", [(1, 1), (3, 1), (3, 3), (-0.5, -0.5), (-0.5, 1), (-0.5, 3), (2, 1)])
@pytest.mark.parametrize("h", [0.1, 0.5, 0.9])
def test_gap_integrand_slope(alpha1, alpha2, h):
    spec = MomentSpec(1, 1, alpha1, alpha2, 0.5)
    step = 1e-6
    numeric = (gap_integrand(spec, h + step) - gap_integrand(spec, h - step)) / (2 * step)
    slope = gap_integrand_slope(spec, h)
    assert slope == pytest.approx(numeric, rel=1e-6, abs=1e-8)
    sign = (1 - alpha1 / 2) * (1 - alpha2 / 2)
    assert slope * sign >= 0


def test_gap_integrand_at_one():
    assert gap_integrand_at_one(MomentSpec(1, 1, 1, 1, 0.5)) == pytest.approx(math.pi / 2, rel=1e-14)
    assert gap_integrand_at_one(MomentSpec(1, 1, -0.5, 2, 0.5)) == 1.0
    assert gap_integrand_at_one(MomentSpec(1, 1, -0.5, 1, 0.5)) == math.inf
    assert gap_integrand_at_one(MomentSpec(1, 1, 0.5, 0.5, 0.5)) == math.inf


@settings(deadline=None)
@given(sampled_from([(1, 1), (2, 2), (1, 3), (-0.5, -0.5)]), correlations)
def test_gap_integral_representation_scale(pair, rho):
    alpha1, alpha2 = pair
    spec = MomentSpec(1, 1, alpha1, alpha2, rho)
    assert gap_via_3f2(spec) == pytest.approx(gap(spec), rel=1e-10, abs=1e-13)
