"""
Identity checks run by ``gpibound selftest``.

Every suite compares two routes to the same number. Functions under test are
looked up through their modules at call time so a patched implementation is
what gets checked.
"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from gpibound import bounds, moments, specfun
from gpibound.errors import GPIError
from gpibound.moments import MomentSpec
from gpibound.specfun import HypParams, Hyp3F2Params

NEGATIVE_EXPONENTS = (-0.9, -0.5, -0.1)
POSITIVE_EXPONENTS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5)
RHO_VALUES = (0.25, 0.5, 0.75, 0.95)
EULER_SEED = 20240601


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    failed: int
    worst: float

    @property
    def ok(self):
        return self.failed == 0


class _Tally:

    def __init__(self, name):
        self.name = name
        self.passed = 0
        self.failed = 0
        self.worst = 0.0

    def check(self, deviation, ok):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
        if not math.isnan(deviation):
            self.worst = max(self.worst, deviation)

    def compare(self, value, ref, rel_tol, abs_tol=0.0):
        diff = abs(value - ref)
        deviation = diff / abs(ref) if ref != 0 else diff
        self.check(deviation, diff <= max(rel_tol * abs(ref), abs_tol))

    def fail(self):
        self.failed += 1
        self.worst = math.inf

    def result(self):
        return SuiteResult(self.name, self.passed, self.failed, self.worst)


def _same_sign_pairs():
    for a1, a2 in itertools.product(NEGATIVE_EXPONENTS + POSITIVE_EXPONENTS, repeat=2):
        if (a1 < 0) == (a2 < 0):
            yield a1, a2


# rounding in a sum is bounded by its absolute magnitude; points where that
# exceeds the value by more than this are not checked
EULER_MAX_CANCELLATION = 1e3


def euler_suite(n=200, seed=EULER_SEED):
    tally = _Tally("euler")
    for p in euler_samples(n, seed):
        try:
            lhs = specfun.hyp2f1(p)
            rhs = specfun.euler_transform(p)
            other = specfun.hyp2f1(HypParams(p.c - p.a, p.c - p.b, p.c, p.z))
        except GPIError:
            tally.fail()
            continue
        if not (well_conditioned(lhs) and well_conditioned(other)):
            continue
        tally.compare(rhs, lhs.value, 1e-10)
    return tally.result()


def euler_samples(n=200, seed=EULER_SEED):
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(n):
        a, b = rng.uniform(-3, 3, size=2)
        c = rng.uniform(0.5, 5)
        z = rng.uniform(0, 0.9)
        yield HypParams(float(a), float(b), float(c), float(z))


def well_conditioned(r):
    return r.magnitude <= EULER_MAX_CANCELLATION * abs(r.value)


GAUSS_SUMMATION_PARAMS = [
    (0.5, 0.5, 2.5),
    (1.0, 1.0, 3.5),
    (0.25, 0.75, 2.5),
    (-0.5, -0.5, 0.5),
    (0.3, 0.2, 2.75),
    (0.75, 0.6, 3.1),
]


def gauss_summation_suite(z=1 - 1e-6):
    tally = _Tally("gauss_summation")
    for a, b, c in GAUSS_SUMMATION_PARAMS:
        try:
            near = specfun.hyp2f1(HypParams(a, b, c, z)).value
            at_one = specfun.hyp2f1_at_one(a, b, c)
        except GPIError:
            tally.fail()
            continue
        tally.compare(near, at_one, 1e-4)
    return tally.result()


def derivative_suite(step=1e-5):
    tally = _Tally("derivative")
    params = [(0.5, 1.5, 2.0), (-0.45, 0.75, 0.5), (1.2, -0.8, 1.5), (0.55, 0.95, 1.5), (2.0, 0.3, 3.5)]
    for (a, b, c), z in itertools.product(params, (0.1, 0.3, 0.5, 0.7)):
        try:
            exact = specfun.hyp2f1_derivative(HypParams(a, b, c, z))
            up = specfun.hyp2f1(HypParams(a, b, c, z + step)).value
            down = specfun.hyp2f1(HypParams(a, b, c, z - step)).value
        except GPIError:
            tally.fail()
            continue
        tally.compare(exact, (up - down) / (2 * step), 1e-6, 1e-9)
    return tally.result()


def integral_rep_suite():
    tally = _Tally("integral_rep")
    pairs = [(1.0, 1.0), (-0.5, -0.1), (0.5, 4.5), (-0.9, 2.0), (3.0, 2.5)]
    for (a1, a2), rho in itertools.product(pairs, (0.25, 0.5, 0.75, 0.95)):
        p = Hyp3F2Params(1 - a1 / 2, 1 - a2 / 2, 1.0, 1.5, 2.0, rho * rho)
        try:
            series = specfun.hyp3f2(p).value
            integral = specfun.hyp_integral_rep(p, rel_tol=1e-11)
        except GPIError:
            tally.fail()
            continue
        tally.compare(integral, series, 1e-8)
    return tally.result()


def dual_path_suite():
    tally = _Tally("dual_path")
    for (a1, a2), rho in itertools.product(_same_sign_pairs(), RHO_VALUES):
        spec = MomentSpec(1.0, 1.0, a1, a2, rho)
        try:
            direct = moments.gap(spec)
            via_3f2 = moments.gap_via_3f2(spec)
            via_integral = moments.gap_via_integral(spec)
        except GPIError:
            tally.fail()
            continue
        tally.compare(via_3f2, direct, 1e-10, 1e-15)
        tally.compare(via_integral, direct, 1e-8, 1e-15)
    return tally.result()


def corollaries_suite(sigma1=1.0, sigma2=1.0, rho=0.5):
    tally = _Tally("corollaries")

    def f(a1, a2):
        return bounds.same_sign_bound(MomentSpec(sigma1, sigma2, a1, a2, rho)).value

    try:
        for a1, a2 in itertools.product((1, 2), repeat=2):
            tally.compare(bounds.unit_exponent_bound(a1, a2, sigma1, sigma2, rho), f(a1, a2), 1e-13)
        for m in range(3, 9):
            tally.compare(bounds.integer_linear_bound(m, sigma1, sigma2, rho), f(m, 1), 1e-13)
        for m, n in itertools.product(range(3, 9), repeat=2):
            tally.compare(bounds.integer_pair_bound(m, n, sigma1, sigma2, rho), f(m, n), 1e-13)
    except GPIError:
        tally.fail()
    return tally.result()


def exactness_suite():
    tally = _Tally("exactness")
    rhos = [round(0.1 * k, 1) for k in range(1, 10)]
    for rho in rhos:
        spec = MomentSpec(1.5, 0.5, 2.0, 2.0, rho)
        expected = 2 * spec.sigma1 ** 2 * spec.sigma2 ** 2 * rho * rho
        try:
            tally.compare(moments.gap(spec), expected, 1e-12)
            tally.compare(bounds.same_sign_bound(spec).value, expected, 1e-12)
        except GPIError:
            tally.fail()
    for a1, rho in itertools.product(NEGATIVE_EXPONENTS, rhos):
        spec = MomentSpec(1.0, 1.0, a1, 2.0, rho)
        try:
            value = moments.gap(spec)
            sandwich = bounds.opposite_sign_bounds(spec)
        except GPIError:
            tally.fail()
            continue
        tally.compare(sandwich.lower, value, 1e-12)
        tally.compare(sandwich.upper, value, 1e-12)
    return tally.result()


def integrand_slope_suite(step=1e-6):
    tally = _Tally("integrand_slope")
    pairs = list(_same_sign_pairs()) + [(a1, a2) for a1 in NEGATIVE_EXPONENTS for a2 in (0.5, 1.0, 3.0, 4.5)]
    for (a1, a2), h in itertools.product(pairs, (0.2, 0.5, 0.8)):
        spec = MomentSpec(1.0, 1.0, a1, a2, 0.5)
        sign = math.copysign(1.0, (1 - a1 / 2) * (1 - a2 / 2))
        try:
            slope = moments.gap_integrand_slope(spec, h)
            numeric = (moments.gap_integrand(spec, h + step) - moments.gap_integrand(spec, h - step)) / (2 * step)
        except GPIError:
            tally.fail()
            continue
        if slope == 0.0:
            tally.compare(numeric, 0.0, 0.0, 1e-8)
            continue
        diff = abs(slope - numeric)
        tally.check(diff / abs(slope), diff <= 1e-6 * abs(slope) + 1e-8
                    and math.copysign(1.0, slope) == sign)
    return tally.result()


SUITES = {
    "euler": euler_suite,
    "gauss_summation": gauss_summation_suite,
    "derivative": derivative_suite,
    "integral_rep": integral_rep_suite,
    "dual_path": dual_path_suite,
    "corollaries": corollaries_suite,
    "exactness": exactness_suite,
    "integrand_slope": integrand_slope_suite,
}


def run_selftest(names=None):
    if names is None:
        names = list(SUITES)
    return [SUITES[name]() for name in names]
