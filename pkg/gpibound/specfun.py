"""
Gamma-family and hypergeometric functions on real arguments, z in [0, 1].
"""
import math
from dataclasses import dataclass, replace
from typing import Sequence, Tuple

import numpy as np

from gpibound.errors import ConvergenceError, DivergenceError, DomainError
from gpibound.quadrature import integrate

SERIES_EPS = 1e-15
MAX_TERMS = 10 ** 6
CONNECTION_THRESHOLD = 0.95
# c - a - b closer than this to an integer makes the connection formula ill-conditioned
_CONNECTION_MIN_FRACTION = 0.05
_INTEGRAL_REL_TOL = 1e-9

GAMMA_MAX_ARG = 171.62

# Lanczos approximation, g = 607/128, 15 terms
_LANCZOS_G = 607 / 128
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)
_SQRT_2PI = math.sqrt(2 * math.pi)


def _is_nonpositive_integer(x):
    return x <= 0 and x == math.floor(x)


def _lanczos_sum(x):
    z = x - 1
    s = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        s += _LANCZOS_COEF[i] / (z + i)
    return z, s


def _lanczos_log(x):
    # x >= 0.5
    z, s = _lanczos_sum(x)
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(s)


def gamma_fn(x: float) -> float:
    r"""
    Gamma function for x > 0; ``math.inf`` once Γ(x) exceeds the double range.

    Examples::
        >>> gamma_fn(0.5)  # sqrt(pi)
        1.7724538509055159
        >>> gamma_fn(5)
        24.0
    """
    if not x > 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    if x > GAMMA_MAX_ARG:
        return math.inf
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1 - x))
    if x == math.floor(x) and x <= 23:
        return float(math.factorial(int(x) - 1))
    z, s = _lanczos_sum(x)
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) does not overflow before the exponential
    p = t ** ((z + 0.5) / 2)
    return _SQRT_2PI * s * p * (p * math.exp(-t))


def log_gamma(x: float) -> float:
    r"""
    ln Γ(x) for x > 0.

    Examples::
        >>> log_gamma(11)  # ln(10!)
        15.104412573075516
    """
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - _lanczos_log(1 - x)
    return _lanczos_log(x)


def log_abs_gamma(x: float) -> Tuple[float, float]:
    r"""
    (ln|Γ(x)|, sign Γ(x)) for any real x that is not a non-positive integer.
    """
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at {x}")
    if x > 0:
        return log_gamma(x), 1.0
    # reflection: Γ(x) Γ(1 - x) = π / sin(πx)
    s = math.sin(math.pi * x)
    return math.log(math.pi / abs(s)) - log_gamma(1 - x), math.copysign(1.0, s)


def reciprocal_gamma(x: float) -> float:
    if _is_nonpositive_integer(x):
        return 0.0
    lg, sign = log_abs_gamma(x)
    return sign * math.exp(-lg)


def gamma_ratio(numer: Sequence[float], denom: Sequence[float]) -> float:
    r"""
    Π Γ(numer) / Π Γ(denom) evaluated in log space; 0 if a denominator argument
    is a pole.
    """
    if any(_is_nonpositive_integer(d) for d in denom):
        return 0.0
    log_value = 0.0
    sign = 1.0
    for x in numer:
        lg, s = log_abs_gamma(x)
        log_value += lg
        sign *= s
    for x in denom:
        lg, s = log_abs_gamma(x)
        log_value -= lg
        sign *= s
    return sign * math.exp(log_value)


def pochhammer(alpha: float, n: int) -> float:
    r"""
    Rising factorial (α)_n with (α)_0 = 1 for every α, including 0.

    Examples::
        >>> pochhammer(0.5, 3)
        1.875
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer requires a nonnegative integer n, got {n}")
    result = 1.0
    for k in range(int(n)):
        result *= alpha + k
    return result


def double_factorial(n: int) -> int:
    if int(n) != n or n < -1:
        raise DomainError(f"double_factorial requires an integer n >= -1, got {n}")
    return math.prod(range(int(n), 0, -2))


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_error_estimate: float
    terminated: bool
    magnitude: float = 1.0


@dataclass(frozen=True)
class HypParams:
    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"c must not be a non-positive integer, got {self.c}")
        if not 0.0 <= self.z <= 1.0:
            raise DomainError(f"z must lie in [0, 1], got {self.z}")

    @property
    def terminates(self):
        return _is_nonpositive_integer(self.a) or _is_nonpositive_integer(self.b)


@dataclass(frozen=True)
class Hyp3F2Params:
    a1: float
    a2: float
    a3: float
    b1: float
    b2: float
    z: float

    def __post_init__(self):
        for b in (self.b1, self.b2):
            if _is_nonpositive_integer(b):
                raise DomainError(f"lower parameters must not be non-positive integers, got {b}")
        if not 0.0 <= self.z <= 1.0:
            raise DomainError(f"z must lie in [0, 1], got {self.z}")

    @property
    def terminates(self):
        return any(_is_nonpositive_integer(a) for a in (self.a1, self.a2, self.a3))


def sum_series(numer: Sequence[float], denom: Sequence[float], z: float,
               eps=SERIES_EPS, max_terms=MAX_TERMS, skip_unit=False) -> SeriesResult:
    r"""
    Partial sum of Σ Π(a_i)_n / Π(b_j)_n · zⁿ/n!.

    Stops when the next term is below eps·|partial sum| and not growing, or when
    a numerator Pochhammer factor reaches zero (terminated). A terminating
    series is always summed in full. The reported truncation error is the
    geometric tail |t_{N+1}| / (1 - r) with r the last term ratio.

    With ``skip_unit`` the n = 0 term is left out, so the result is the series
    minus one without rounding against 1.
    """
    terminates = any(_is_nonpositive_integer(a) for a in numer)
    total = 0.0 if skip_unit else 1.0
    if z == 0.0:
        return SeriesResult(total, 1, 0.0, False, abs(total))
    term = 1.0
    magnitude = abs(total)
    for n in range(max_terms):
        if any(a + n == 0 for a in numer):
            return SeriesResult(total, n + 1, 0.0, True, magnitude)
        ratio = z / (n + 1)
        for a in numer:
            ratio *= a + n
        for b in denom:
            ratio /= b + n
        nxt = term * ratio
        if not terminates and abs(nxt) <= eps * abs(total) and abs(nxt) <= abs(term):
            r = abs(ratio)
            tail = abs(nxt) / (1 - r) if r < 1 else abs(nxt)
            return SeriesResult(total, n + 1, tail, False, magnitude)
        total += nxt
        magnitude += abs(nxt)
        term = nxt
    partial = SeriesResult(total, max_terms, abs(term), False, magnitude)
    raise ConvergenceError(
        f"Series did not converge within {max_terms} terms at z={z}", partial=partial)


def _near_integer(x, tol):
    return abs(x - round(x)) < tol


def hyp2f1(p: HypParams, eps=SERIES_EPS, max_terms=MAX_TERMS) -> SeriesResult:
    r"""
    Gauss hypergeometric function F(a, b; c; z) for z in [0, 1).

    Examples::
        >>> hyp2f1(HypParams(-1, -1, 0.5, 0.25)).value
        1.5
        >>> hyp2f1(HypParams(1, 1, 2, 0.5)).value  # 2 ln 2
        1.3862943611198906
    """
    if p.z >= 1.0:
        raise DomainError("hyp2f1 requires z < 1; use hyp2f1_at_one for z = 1")
    s = p.c - p.a - p.b
    if p.z > CONNECTION_THRESHOLD and not p.terminates \
            and not _near_integer(s, _CONNECTION_MIN_FRACTION):
        return _hyp2f1_near_one(p, eps, max_terms)
    return sum_series((p.a, p.b), (p.c,), p.z, eps, max_terms)


def hyp2f1_minus_one(p: HypParams, eps=SERIES_EPS, max_terms=MAX_TERMS) -> SeriesResult:
    r"""
    F(a, b; c; z) - 1 summed from the n = 1 term, so small z keeps full
    relative accuracy.

    Examples::
        >>> hyp2f1_minus_one(HypParams(-1, -1, 0.5, 1e-20)).value
        2e-20
    """
    if p.z >= 1.0:
        raise DomainError("hyp2f1_minus_one requires z < 1")
    s = p.c - p.a - p.b
    if p.z > CONNECTION_THRESHOLD and not p.terminates \
            and not _near_integer(s, _CONNECTION_MIN_FRACTION):
        full = _hyp2f1_near_one(p, eps, max_terms)
        return replace(full, value=full.value - 1.0)
    return sum_series((p.a, p.b), (p.c,), p.z, eps, max_terms, skip_unit=True)


def _hyp2f1_near_one(p: HypParams, eps, max_terms) -> SeriesResult:
    # F(a,b;c;z) = A F(a,b;a+b-c+1;1-z) + B (1-z)^(c-a-b) F(c-a,c-b;c-a-b+1;1-z)
    a, b, c = p.a, p.b, p.c
    s = c - a - b
    w = 1.0 - p.z
    first = sum_series((a, b), (1.0 - s,), w, eps, max_terms)
    second = sum_series((c - a, c - b), (1.0 + s,), w, eps, max_terms)
    coef_first = gamma_ratio((c, s), (c - a, c - b))
    coef_second = gamma_ratio((c, -s), (a, b)) * w ** s
    value = coef_first * first.value + coef_second * second.value
    error = abs(coef_first) * first.truncation_error_estimate \
        + abs(coef_second) * second.truncation_error_estimate
    magnitude = abs(coef_first) * first.magnitude + abs(coef_second) * second.magnitude
    return SeriesResult(value, first.terms_used + second.terms_used, error, False, magnitude)


def hyp2f1_at_one(a: float, b: float, c: float) -> float:
    r"""
    F(a, b; c; 1) by Gauss summation Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)), or by the
    finite sum when a or b is a non-positive integer.

    Raises DivergenceError when c - a - b <= 0 and the series does not terminate.

    Examples::
        >>> hyp2f1_at_one(0.5, 0.5, 1.5)  # pi / 2
        1.5707963267948966
    """
    p = HypParams(a, b, c, 1.0)
    if p.terminates:
        return sum_series((a, b), (c,), 1.0).value
    s = c - a - b
    if s <= 0:
        raise DivergenceError(
            f"F({a}, {b}; {c}; 1) diverges: c - a - b = {s} <= 0")
    return gamma_ratio((c, s), (c - a, c - b))


def hyp2f1_derivative(p: HypParams, eps=SERIES_EPS, max_terms=MAX_TERMS) -> float:
    r"""
    d/dz F(a, b; c; z) = (ab/c) F(a+1, b+1; c+1; z).
    """
    factor = p.a * p.b / p.c
    if factor == 0.0:
        return 0.0
    shifted = HypParams(p.a + 1, p.b + 1, p.c + 1, p.z)
    return factor * hyp2f1(shifted, eps, max_terms).value


def euler_transform(p: HypParams, eps=SERIES_EPS, max_terms=MAX_TERMS) -> float:
    r"""
    Right-hand side of F(a, b; c; z) = (1 - z)^{c-a-b} F(c - a, c - b; c; z).
    """
    transformed = HypParams(p.c - p.a, p.c - p.b, p.c, p.z)
    return (1.0 - p.z) ** (p.c - p.a - p.b) * hyp2f1(transformed, eps, max_terms).value


def hyp3f2(p: Hyp3F2Params, eps=SERIES_EPS, max_terms=MAX_TERMS) -> SeriesResult:
    r"""
    ₃F₂(a1, a2, a3; b1, b2; z) for z in [0, 1]; z = 1 requires
    b1 + b2 - a1 - a2 - a3 > 0 unless the series terminates.
    """
    if p.z == 1.0 and not p.terminates:
        excess = p.b1 + p.b2 - p.a1 - p.a2 - p.a3
        if excess <= 0:
            raise DivergenceError(f"3F2 diverges at z = 1: b1 + b2 - a1 - a2 - a3 = {excess}")
    return sum_series((p.a1, p.a2, p.a3), (p.b1, p.b2), p.z, eps, max_terms)


def hyp_integral_rep(p: Hyp3F2Params, rel_tol=_INTEGRAL_REL_TOL) -> float:
    r"""
    ₃F₂ through its Euler-type integral over a ₂F₁:

        Γ(b2) / (Γ(a3) Γ(b2 - a3)) ∫₀¹ t^{a3-1} (1-t)^{b2-a3-1} F(a1, a2; b1; zt) dt
    """
    if not p.b2 > p.a3 > 0:
        raise DomainError(f"integral representation requires b2 > a3 > 0, got a3={p.a3}, b2={p.b2}")
    if p.z == 0.0:
        return 1.0
    if p.z >= 1.0:
        raise DomainError("hyp_integral_rep requires z < 1")
    a1, a2, a3, b1, b2, z = p.a1, p.a2, p.a3, p.b1, p.b2, p.z

    def integrand(t):
        inner = np.array([hyp2f1(HypParams(a1, a2, b1, z * ti)).value for ti in t])
        return t ** (a3 - 1) * (1 - t) ** (b2 - a3 - 1) * inner

    result = integrate(integrand, 0.0, 1.0, rel_tol=rel_tol, abs_tol=1e-15)
    return gamma_ratio((b2,), (a3, b2 - a3)) * result.value
