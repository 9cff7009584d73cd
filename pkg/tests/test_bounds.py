import itertools
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis.strategies import floats, one_of
from scipy import special

from gpibound.bounds import (
    BoundCase, OppositeSignBounds, SameSignBound, Theorem, check_point, integer_linear_bound,
    integer_pair_bound, main_branch_value, mixed_magnitude_value, opposite_sign_bounds,
    remark_conditions_hold, same_sign_bound, unit_exponent_bound,
)
from gpibound.errors import DomainError
from gpibound.moments import MomentSpec, gap

negative = floats(-0.95, -0.05)
positive = floats(0.05, 6.0)
correlations = floats(-0.99, 0.99)
scales = floats(0.3, 3.0)


def opposite_coefficient(sigma1, sigma2, alpha1, alpha2, rho):
    return (2 ** ((alpha1 + alpha2) / 2) * alpha1 * alpha2 * sigma1 ** alpha1 * sigma2 ** alpha2
            * rho ** 2 * special.gamma((alpha1 + 1) / 2) * special.gamma((alpha2 + 1) / 2) / (2 * math.pi))


@pytest.mark.parametrize("alpha1, alpha2, expected", [
    (1, 1, 0.0795774715),
    (1, 2, 0.1994711402),
    (2, 1, 0.1994711402),
    (2, 2, 0.5),
])
def test_same_sign_bound_unit_exponents(alpha1, alpha2, expected):
    bound = same_sign_bound(MomentSpec(1, 1, alpha1, alpha2, 0.5))
    assert bound.value == pytest.approx(expected, abs=1e-10)
    assert bound.case_tag == BoundCase.SAME_SIGN_MAIN


@pytest.mark.parametrize("alpha1, alpha2, case", [
    (3, 1, BoundCase.MIXED_MAGNITUDE),
    (1, 4.5, BoundCase.MIXED_MAGNITUDE),
    (3, 3, BoundCase.SAME_SIGN_MAIN),
    (3, 2, BoundCase.SAME_SIGN_MAIN),
    (2, 4.5, BoundCase.SAME_SIGN_MAIN),
    (0.5, 1.5, BoundCase.SAME_SIGN_MAIN),
    (-0.5, -0.9, BoundCase.SAME_SIGN_MAIN),
])
def test_same_sign_case_split(alpha1, alpha2, case):
    assert same_sign_bound(MomentSpec(1, 1, alpha1, alpha2, 0.5)).case_tag == case


def test_same_sign_bound_rejects_opposite_signs():
    with pytest.raises(DomainError):
        same_sign_bound(MomentSpec(1, 1, -0.5, 1, 0.5))
    with pytest.raises(DomainError):
        same_sign_bound(MomentSpec(1, 1, 0, 1, 0.5))


def test_same_sign_bound_vanishes_without_correlation():
    assert same_sign_bound(MomentSpec(2, 3, 1.5, 3, 0.0)).value == 0.0
    assert same_sign_bound(MomentSpec(2, 3, 3, 1, 0.0)).value == 0.0


def test_mixed_magnitude_requires_large_sum():
    with pytest.raises(DomainError):
        mixed_magnitude_value(MomentSpec(1, 1, 0.5, 0.4, 0.5))


def test_branches_agree_on_boundary():
    # with α2 = 2 the integrand is identically one and both formulas give the gap
    spec = MomentSpec(1, 1, 3, 2, 0.7)
    assert main_branch_value(spec) == pytest.approx(gap(spec), rel=1e-12)
    assert mixed_magnitude_value(spec) == pytest.approx(gap(spec), rel=1e-12)


def test_mixed_magnitude_is_below_main_branch():
    spec = MomentSpec(1, 1, 3, 1, 0.6)
    assert mixed_magnitude_value(spec) < main_branch_value(spec)
    assert mixed_magnitude_value(spec) <= gap(spec)


def test_unit_exponent_bound():
    assert unit_exponent_bound(1, 1, 1, 1, 0.5) == pytest.approx(0.25 / math.pi)
    assert unit_exponent_bound(1, 2, 1, 1, 0.5) == pytest.approx(math.sqrt(2) * 0.25 / math.sqrt(math.pi))
    assert unit_exponent_bound(2, 2, 2, 0.5, 0.5) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        unit_exponent_bound(1, 3, 1, 1, 0.5)


@pytest.mark.parametrize("m", range(3, 9))
@pytest.mark.parametrize("sigma1, sigma2, rho", [(1, 1, 0.5), (0.7, 1.8, -0.3)])
def test_integer_linear_bound_matches_general_bound(m, sigma1, sigma2, rho):
    general = same_sign_bound(MomentSpec(sigma1, sigma2, m, 1, rho)).value
    assert integer_linear_bound(m, sigma1, sigma2, rho) == pytest.approx(general, rel=1e-13)


@pytest.mark.parametrize("m, n", list(itertools.product(range(3, 9), repeat=2)))
def test_integer_pair_bound_matches_general_bound(m, n):
    general = same_sign_bound(MomentSpec(1, 1, m, n, 0.5)).value
    assert integer_pair_bound(m, n, 1, 1, 0.5) == pytest.approx(general, rel=1e-13)


def test_integer_bounds_domain():
    with pytest.raises(DomainError):
        integer_linear_bound(2, 1, 1, 0.5)
    with pytest.raises(DomainError):
        integer_linear_bound(3.5, 1, 1, 0.5)
    with pytest.raises(DomainError):
        integer_pair_bound(3, 2, 1, 1, 0.5)


def test_opposite_sign_bounds_terminating_case():
    spec = MomentSpec(1, 1, -0.5, 2, 0.5)
    bounds = opposite_sign_bounds(spec)
    expected = opposite_coefficient(1, 1, -0.5, 2, 0.5)
    assert expected == pytest.approx(-0.21501, abs=1e-5)
    assert bounds.lower == pytest.approx(expected, rel=1e-12)
    assert bounds.upper == pytest.approx(expected, rel=1e-12)
    assert bounds.finite_lower
    assert bounds.case_tag == BoundCase.MODERATE_EXPONENT
    assert gap(spec) == pytest.approx(expected, rel=1e-12)


def test_opposite_sign_bounds_vacuous_lower():
    bounds = opposite_sign_bounds(MomentSpec(1, 1, -0.5, 1, 0.5))
    assert not bounds.finite_lower
    assert bounds.lower == -math.inf
    assert bounds.upper == pytest.approx(opposite_coefficient(1, 1, -0.5, 1, 0.5), rel=1e-12)


def test_opposite_sign_bounds_large_exponent():
    spec = MomentSpec(1, 1, -0.5, 3, 0.5)
    bounds = opposite_sign_bounds(spec)
    assert bounds.case_tag == BoundCase.LARGE_EXPONENT
    assert bounds.lower == pytest.approx(opposite_coefficient(1, 1, -0.5, 3, 0.5), rel=1e-12)
    assert bounds.lower <= gap(spec) <= bounds.upper <= 0


def test_opposite_sign_bounds_swap():
    direct = opposite_sign_bounds(MomentSpec(2, 0.5, -0.3, 3, 0.4))
    swapped = opposite_sign_bounds(MomentSpec(0.5, 2, 3, -0.3, 0.4))
    assert swapped.swapped and not direct.swapped
    assert swapped.lower == pytest.approx(direct.lower, rel=1e-14)
    assert swapped.upper == pytest.approx(direct.upper, rel=1e-14)


def test_opposite_sign_bounds_zero_correlation():
    bounds = opposite_sign_bounds(MomentSpec(1, 1, -0.5, 1, 0.0))
    assert (bounds.lower, bounds.upper, bounds.finite_lower) == (0.0, 0.0, True)


def test_opposite_sign_bounds_rejects_same_signs():
    with pytest.raises(DomainError):
        opposite_sign_bounds(MomentSpec(1, 1, 1, 1, 0.5))


def test_check_point_same_sign():
    report = check_point(MomentSpec(1, 1, 1, 1, 0.5))
    assert report.theorem == Theorem.SAME_SIGN
    assert isinstance(report.bound, SameSignBound)
    assert report.satisfied
    assert report.slack == pytest.approx(0.0813758 - 0.0795775, abs=1e-6)
    assert report.slack == pytest.approx(report.gap - 0.25 / math.pi, rel=1e-12)
    assert report.error is None


def test_check_point_opposite_sign_equality():
    report = check_point(MomentSpec(1, 1, -0.5, 2, 0.5))
    assert report.theorem == Theorem.OPPOSITE_SIGN
    assert isinstance(report.bound, OppositeSignBounds)
    assert report.satisfied
    assert abs(report.slack) < 1e-12


def test_check_point_vacuous_lower():
    report = check_point(MomentSpec(1, 1, -0.9, 0.05, 0.5))
    assert report.vacuous
    assert report.satisfied
    assert report.slack == pytest.approx(report.bound.upper - report.gap)


def test_check_point_zero_exponent():
    report = check_point(MomentSpec(1, 1, 0, 2.5, 0.7))
    assert report.theorem == Theorem.ZERO_EXPONENT
    assert report.bound is None
    assert report.satisfied
    assert report.gap == 0.0


def test_check_point_records_errors():
    report = check_point(MomentSpec(1, 2, 1, 1, 1.0))
    assert not report.satisfied
    assert report.error.startswith("DomainError")
    assert report.error_code == 2
    assert report.theorem == Theorem.NONE


def test_check_point_unit_correlation():
    report = check_point(MomentSpec(1, 1, 1, 1, 1.0))
    assert report.extends
    assert report.satisfied
    assert report.gap == pytest.approx(1 - 2 / math.pi)
    report = check_point(MomentSpec(1, 1, -0.5, 2, -1.0))
    assert report.extends and report.satisfied


@pytest.mark.parametrize("alpha1, alpha2", [(-0.6, -0.5), (-0.5, -0.5), (-0.9, -0.3)])
def test_check_point_unit_correlation_outside_conditions(alpha1, alpha2):
    spec = MomentSpec(1, 1, alpha1, alpha2, -1.0)
    assert not remark_conditions_hold(spec)
    report = check_point(spec)
    assert report.gap == math.inf
    assert report.error is None
    assert not report.extends
    assert not report.satisfied
    assert check_point(MomentSpec(1, 1, alpha1, alpha2, -0.5)).extends


@pytest.mark.parametrize("alpha1, alpha2, holds", [
    (1, 2, True), (-0.3, -0.2, True), (-0.6, -0.5, False), (-0.5, 3, True), (0, 1, False),
])
def test_remark_conditions(alpha1, alpha2, holds):
    assert remark_conditions_hold(MomentSpec(1, 1, alpha1, alpha2, 1.0)) == holds


@settings(max_examples=200, deadline=None)
@given(one_of(negative, positive), one_of(negative, positive), correlations, scales, scales)
def test_bounds_hold(alpha1, alpha2, rho, sigma1, sigma2):
    report = check_point(MomentSpec(sigma1, sigma2, alpha1, alpha2, rho))
    assert report.error is None
    assert report.satisfied
    if report.theorem == Theorem.SAME_SIGN:
        assert report.bound.value >= 0
    else:
        assert report.bound.upper <= 0


@settings(max_examples=100, deadline=None)
@given(negative, positive, correlations)
def test_opposite_bounds_order(alpha1, alpha2, rho):
    assume(rho != 0)
    bounds = opposite_sign_bounds(MomentSpec(1, 1, alpha1, alpha2, rho))
    assert bounds.lower <= bounds.upper <= 0
