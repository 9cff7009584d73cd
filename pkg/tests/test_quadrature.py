import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from gpibound.errors import QuadratureError
from gpibound.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, gauss_kronrod, integrate


def test_rule_weights_sum_to_interval_length():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert len(NODES) == 15
    assert_allclose(NODES, -NODES[::-1], atol=0)


def test_kronrod_exact_for_polynomials():
    value, error = gauss_kronrod(lambda x: x ** 12 - 3 * x ** 5, np.array([0.0]), np.array([2.0]))
    assert value[0] == pytest.approx(2 ** 13 / 13 - 3 * 2 ** 6 / 6, rel=1e-14)
    assert error[0] < 1e-10


def test_integrate_exponential():
    result = integrate(np.exp, 0.0, 1.0, rel_tol=1e-13)
    assert result.value == pytest.approx(math.e - 1, rel=1e-13)
    assert result.error <= 1e-13 * result.value


def test_integrate_endpoint_singularity():
    result = integrate(lambda x: x ** -0.5, 0.0, 1.0, rel_tol=1e-8)
    assert result.value == pytest.approx(2.0, rel=1e-7)
    assert result.intervals > 1


def test_integrate_vector_valued():
    result = integrate(lambda x: np.stack([x, x ** 2, np.cos(x)], axis=1), 0.0, 1.0, rel_tol=1e-12)
    assert_allclose(result.value, [0.5, 1 / 3, math.sin(1.0)], rtol=1e-12)
    assert result.value.shape == (3,)


def test_integrate_empty_interval():
    result = integrate(np.exp, 1.5, 1.5)
    assert result.value == 0.0
    assert result.intervals == 0
    with pytest.raises(ValueError):
        integrate(np.exp, 1.0, 0.0)


def test_integrate_budget_exhausted():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sin(200 * x), 0.0, 10.0, rel_tol=1e-14, max_subdivisions=2)
    assert math.isfinite(info.value.value)
    assert info.value.error > 0


def test_integrate_min_intervals():
    result = integrate(np.cos, 0.0, math.pi, rel_tol=1e-10, abs_tol=1e-14, min_intervals=4)
    assert result.intervals >= 4
    assert abs(result.value) < 1e-13
