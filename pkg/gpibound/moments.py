"""
Absolute moments of centered Gaussian scalars and pairs.

For (X1, X2) centered with standard deviations sigma1, sigma2 and correlation rho,

    E|X1|^a1 |X2|^a2 = P * F(-a1/2, -a2/2; 1/2; rho^2),
    P = 2^((a1+a2)/2) sigma1^a1 sigma2^a2 Γ((a1+1)/2) Γ((a2+1)/2) / π,

and P alone is the product of the marginal moments, so the gap is P * (F - 1).
"""
import math
from dataclasses import dataclass
from typing import Tuple

from gpibound.errors import DivergenceError, DomainError
from gpibound.quadrature import integrate
from gpibound.specfun import (
    HypParams, Hyp3F2Params, double_factorial, hyp2f1, hyp2f1_at_one, hyp2f1_minus_one, hyp3f2,
    log_gamma,
)

_LOG2 = math.log(2.0)
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class MomentSpec:
    sigma1: float
    sigma2: float
    alpha1: float
    alpha2: float
    rho: float

    def __post_init__(self):
        if not (self.sigma1 > 0 and self.sigma2 > 0):
            raise DomainError(f"sigmas must be positive, got {self.sigma1}, {self.sigma2}")
        if not (self.alpha1 > -1 and self.alpha2 > -1):
            raise DomainError(f"exponents must exceed -1, got {self.alpha1}, {self.alpha2}")
        if not abs(self.rho) <= 1:
            raise DomainError(f"|rho| must not exceed 1, got {self.rho}")

    @property
    def rho_squared(self):
        return self.rho * self.rho

    @property
    def degenerate(self):
        return abs(self.rho) == 1

    def swapped(self) -> "MomentSpec":
        return MomentSpec(self.sigma2, self.sigma1, self.alpha2, self.alpha1, self.rho)


def _check_moment_args(sigma, alpha):
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")


def log_abs_moment_1d(sigma: float, alpha: float) -> float:
    _check_moment_args(sigma, alpha)
    return 0.5 * alpha * _LOG2 + alpha * math.log(sigma) \
        + log_gamma((alpha + 1) / 2) - 0.5 * _LOG_PI


def abs_moment_1d(sigma: float, alpha: float) -> float:
    r"""
    E|X|^α for X ~ N(0, σ²): 2^{α/2} σ^α Γ((α+1)/2) / √π.

    Examples::
        >>> abs_moment_1d(1, 1)  # sqrt(2 / pi)
        0.7978845608028654
        >>> abs_moment_1d(2, 4)  # 3 sigma^4
        48.0
    """
    if alpha == int(alpha) and alpha % 2 == 0 and 0 <= alpha <= 40:
        _check_moment_args(sigma, alpha)
        return double_factorial(int(alpha) - 1) * sigma ** alpha
    return math.exp(log_abs_moment_1d(sigma, alpha))


def log_prefactor(spec: MomentSpec) -> float:
    return log_abs_moment_1d(spec.sigma1, spec.alpha1) + log_abs_moment_1d(spec.sigma2, spec.alpha2)


def product_of_marginals(spec: MomentSpec) -> float:
    return math.exp(log_prefactor(spec))


def _moment_params(spec: MomentSpec) -> HypParams:
    return HypParams(-spec.alpha1 / 2, -spec.alpha2 / 2, 0.5, spec.rho_squared)


def product_moment(spec: MomentSpec) -> float:
    r"""
    E|X1|^{α1} |X2|^{α2} for |ρ| < 1.

    Examples::
        >>> product_moment(MomentSpec(1, 1, 2, 2, 0.6))  # 1 + 2 rho^2
        1.72
    """
    if spec.degenerate:
        raise DomainError("product_moment requires |rho| < 1; use product_moment_rho_one")
    return product_of_marginals(spec) * hyp2f1(_moment_params(spec)).value


def product_moment_series(spec: MomentSpec) -> Tuple[float, float]:
    r"""
    The closed form with the series truncation error scaled by the prefactor.
    Degenerate specs are exact.
    """
    if spec.degenerate:
        return product_moment_rho_one(spec), 0.0
    scale = product_of_marginals(spec)
    series = hyp2f1(_moment_params(spec))
    return scale * series.value, scale * series.truncation_error_estimate


def product_moment_rho_one(spec: MomentSpec) -> float:
    r"""
    E|X1|^{α1} |X2|^{α2} for |ρ| = 1, where X2 = ±X1 and the moment collapses
    to E|X1|^{α1+α2}. Returns ``math.inf`` when α1 + α2 <= -1.
    """
    if not spec.degenerate:
        raise DomainError("product_moment_rho_one requires |rho| = 1")
    if spec.sigma1 != spec.sigma2:
        raise DomainError(
            f"|rho| = 1 requires sigma1 = sigma2, got {spec.sigma1} and {spec.sigma2}")
    total = spec.alpha1 + spec.alpha2
    if total <= -1:
        return math.inf
    return abs_moment_1d(spec.sigma1, total)


def gap(spec: MomentSpec) -> float:
    r"""
    E|X1|^{α1}|X2|^{α2} - E|X1|^{α1} E|X2|^{α2}, computed as P * (F - 1) with F - 1
    summed directly so small ρ does not cancel against 1.

    Examples::
        >>> gap(MomentSpec(1, 1, 2, 2, 0.5))
        0.5
    """
    if spec.degenerate:
        moment = product_moment_rho_one(spec)
        if math.isinf(moment):
            return moment
        return moment - product_of_marginals(spec)
    if spec.rho == 0:
        return 0.0
    return product_of_marginals(spec) * hyp2f1_minus_one(_moment_params(spec)).value


def _integrand_params(spec: MomentSpec, h: float) -> HypParams:
    return HypParams(1 - spec.alpha1 / 2, 1 - spec.alpha2 / 2, 1.5, h)


def gap_via_3f2(spec: MomentSpec) -> float:
    r"""
    The gap through P * (ρ² α1 α2 / 2) ₃F₂(1-α1/2, 1-α2/2, 1; 3/2, 2; ρ²).
    """
    if spec.degenerate:
        raise DomainError("gap_via_3f2 requires |rho| < 1")
    if spec.rho == 0:
        return 0.0
    rho2 = spec.rho_squared
    p = Hyp3F2Params(1 - spec.alpha1 / 2, 1 - spec.alpha2 / 2, 1.0, 1.5, 2.0, rho2)
    bracket = 0.5 * rho2 * spec.alpha1 * spec.alpha2 * hyp3f2(p).value
    return product_of_marginals(spec) * bracket


def gap_integrand(spec: MomentSpec, h: float) -> float:
    return hyp2f1(_integrand_params(spec, h)).value


def gap_integrand_slope(spec: MomentSpec, h: float) -> float:
    r"""
    d/dh F(1-α1/2, 1-α2/2; 3/2; h) in Euler-transformed form

        (2/3)(1-α1/2)(1-α2/2) (1-h)^{(1+α1+α2)/2-2} F((1+α1)/2, (1+α2)/2; 5/2; h),

    whose sign is that of (1-α1/2)(1-α2/2).
    """
    a1, a2 = spec.alpha1, spec.alpha2
    factor = (2 / 3) * (1 - a1 / 2) * (1 - a2 / 2)
    if factor == 0.0:
        return 0.0
    inner = hyp2f1(HypParams((1 + a1) / 2, (1 + a2) / 2, 2.5, h)).value
    return factor * (1 - h) ** ((1 + a1 + a2) / 2 - 2) * inner


def gap_integrand_at_one(spec: MomentSpec) -> float:
    r"""
    F(1-α1/2, 1-α2/2; 3/2; 1), ``math.inf`` when the sum diverges.
    """
    try:
        return hyp2f1_at_one(1 - spec.alpha1 / 2, 1 - spec.alpha2 / 2, 1.5)
    except DivergenceError:
        return math.inf


def gap_via_integral(spec: MomentSpec, rel_tol=1e-11) -> float:
    r"""
    The gap through P * (α1 α2 / 2) ∫₀^{ρ²} F(1-α1/2, 1-α2/2; 3/2; h) dh.
    """
    if spec.degenerate:
        raise DomainError("gap_via_integral requires |rho| < 1")
    if spec.rho == 0:
        return 0.0
    a = 1 - spec.alpha1 / 2
    b = 1 - spec.alpha2 / 2

    def integrand(h):
        return [hyp2f1(HypParams(a, b, 1.5, hi)).value for hi in h]

    area = integrate(integrand, 0.0, spec.rho_squared, rel_tol=rel_tol).value
    return product_of_marginals(spec) * 0.5 * spec.alpha1 * spec.alpha2 * area
