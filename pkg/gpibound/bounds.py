"""
Explicit bounds on the gap E|X1|^a1 |X2|^a2 - E|X1|^a1 E|X2|^a2.

Same-sign exponents get a nonnegative lower bound f; opposite-sign exponents get
a two-sided sandwich below zero. Both follow from writing the gap as

    P * (a1 a2 / 2) * ∫₀^{ρ²} F(1 - a1/2, 1 - a2/2; 3/2; h) dh

and bounding the integrand, which is monotone in h with the sign of
(1 - a1/2)(1 - a2/2), by its value at h = 0 (equal to 1) or at h = 1.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from gpibound.errors import DomainError, GPIError
from gpibound.moments import MomentSpec, gap, gap_integrand_at_one
from gpibound.specfun import double_factorial, log_gamma

DEFAULT_TOLERANCE = 1e-9

_LOG2 = math.log(2.0)
_LOG_2PI = math.log(2 * math.pi)
_LOG_4_SQRT_PI = math.log(4 * math.sqrt(math.pi))


class BoundCase(str, Enum):
    SAME_SIGN_MAIN = "SameSignMain"
    MIXED_MAGNITUDE = "MixedMagnitude"
    MODERATE_EXPONENT = "ModerateExponent"
    LARGE_EXPONENT = "LargeExponent"


class Theorem(str, Enum):
    SAME_SIGN = "same_sign"
    OPPOSITE_SIGN = "opposite_sign"
    ZERO_EXPONENT = "zero_exponent"
    NONE = "none"


@dataclass(frozen=True)
class SameSignBound:
    value: float
    case_tag: BoundCase


@dataclass(frozen=True)
class OppositeSignBounds:
    lower: float
    upper: float
    finite_lower: bool
    case_tag: BoundCase
    swapped: bool = False


@dataclass(frozen=True)
class BoundReport:
    spec: MomentSpec
    gap: float
    bound: Union[SameSignBound, OppositeSignBounds, None]
    theorem: Theorem
    satisfied: bool
    slack: float
    error: Optional[str] = None
    error_code: int = 0
    # False at |ρ| = 1 when the bounds are not known to extend there
    extends: bool = True

    @property
    def vacuous(self):
        return isinstance(self.bound, OppositeSignBounds) and not self.bound.finite_lower


def _same_sign(a1, a2):
    return (-1 < a1 < 0 and -1 < a2 < 0) or (a1 > 0 and a2 > 0)


def _log_scale(spec: MomentSpec) -> float:
    return 0.5 * (spec.alpha1 + spec.alpha2) * _LOG2 \
        + spec.alpha1 * math.log(spec.sigma1) + spec.alpha2 * math.log(spec.sigma2)


def main_branch_value(spec: MomentSpec) -> float:
    r"""
    2^{(α1+α2)/2} α1 α2 σ1^{α1} σ2^{α2} ρ² Γ((α1+1)/2) Γ((α2+1)/2) / (2π)
    """
    log_part = _log_scale(spec) + log_gamma((spec.alpha1 + 1) / 2) \
        + log_gamma((spec.alpha2 + 1) / 2) - _LOG_2PI
    return spec.alpha1 * spec.alpha2 * spec.rho_squared * math.exp(log_part)


def mixed_magnitude_value(spec: MomentSpec) -> float:
    r"""
    2^{(α1+α2)/2} α1 α2 σ1^{α1} σ2^{α2} ρ² Γ((α1+α2-1)/2) / (4√π)
    """
    shape = (spec.alpha1 + spec.alpha2 - 1) / 2
    if not shape > 0:
        raise DomainError(f"mixed-magnitude branch requires alpha1 + alpha2 > 1, got {2 * shape + 1}")
    log_part = _log_scale(spec) + log_gamma(shape) - _LOG_4_SQRT_PI
    return spec.alpha1 * spec.alpha2 * spec.rho_squared * math.exp(log_part)


def _is_mixed_magnitude(a1, a2):
    return (a1 > 2 and 0 < a2 < 2) or (0 < a1 < 2 and a2 > 2)


def same_sign_bound(spec: MomentSpec) -> SameSignBound:
    r"""
    Lower bound f on the gap for exponents both in (-1, 0) or both positive.

    The pair (α > 2, 2) takes the main branch: the integrand's derivative factor
    (1 - α/2) vanishes there and the integrand is identically 1.

    Examples::
        >>> same_sign_bound(MomentSpec(1, 1, 1, 1, 0.5)).value  # rho^2 / pi
        0.07957747154594767
    """
    a1, a2 = spec.alpha1, spec.alpha2
    if not _same_sign(a1, a2):
        raise DomainError(
            f"same_sign_bound requires exponents of the same sign, got {a1}, {a2}")
    if _is_mixed_magnitude(a1, a2):
        return SameSignBound(mixed_magnitude_value(spec), BoundCase.MIXED_MAGNITUDE)
    return SameSignBound(main_branch_value(spec), BoundCase.SAME_SIGN_MAIN)


def opposite_sign_bounds(spec: MomentSpec) -> OppositeSignBounds:
    r"""
    Two-sided bounds lower <= gap <= upper <= 0 for α1 in (-1, 0), α2 > 0.

    Specs with α1 > 0 > α2 are swapped first. With C the main-branch coefficient
    (negative for ρ ≠ 0) and G = F(1-α1/2, 1-α2/2; 3/2; 1):

    - 0 < α2 <= 2: lower = C·G, upper = C
    - α2 > 2:      lower = C,   upper = min(C·G, 0)

    G diverges when α1 + α2 <= 1; the lower bound is then -inf.
    """
    a1, a2 = spec.alpha1, spec.alpha2
    swapped = False
    if a1 > 0 > a2:
        spec = spec.swapped()
        a1, a2 = a2, a1
        swapped = True
    if not (-1 < a1 < 0 and a2 > 0):
        raise DomainError(
            f"opposite_sign_bounds requires exponents of opposite signs, got {a1}, {a2}")

    coef = main_branch_value(spec)
    if coef == 0.0:
        case = BoundCase.MODERATE_EXPONENT if a2 <= 2 else BoundCase.LARGE_EXPONENT
        return OppositeSignBounds(0.0, 0.0, True, case, swapped)
    at_one = gap_integrand_at_one(spec)
    finite = not math.isinf(at_one)
    if a2 <= 2:
        lower = coef * at_one if finite else -math.inf
        return OppositeSignBounds(lower, coef, finite, BoundCase.MODERATE_EXPONENT, swapped)
    # at_one is finite here: α1 + α2 > 1
    return OppositeSignBounds(coef, min(coef * at_one, 0.0), True, BoundCase.LARGE_EXPONENT, swapped)


def unit_exponent_bound(alpha1: int, alpha2: int, sigma1: float, sigma2: float, rho: float) -> float:
    r"""
    f for exponents in {1, 2}:

        (1, 1): σ1 σ2 ρ² / π
        (1, 2): √2 σ1 σ2² ρ² / √π, and mirrored
        (2, 2): 2 σ1² σ2² ρ²
    """
    pair = (alpha1, alpha2)
    rho2 = rho * rho
    if pair == (1, 1):
        return sigma1 * sigma2 * rho2 / math.pi
    if pair == (1, 2):
        return math.sqrt(2) * sigma1 * sigma2 ** 2 * rho2 / math.sqrt(math.pi)
    if pair == (2, 1):
        return math.sqrt(2) * sigma1 ** 2 * sigma2 * rho2 / math.sqrt(math.pi)
    if pair == (2, 2):
        return 2 * sigma1 ** 2 * sigma2 ** 2 * rho2
    raise DomainError(f"exponents must lie in {{1, 2}}, got {pair}")


def integer_linear_bound(m: int, sigma1: float, sigma2: float, rho: float) -> float:
    r"""
    f for α1 = m > 2 an integer and α2 = 1:

        (m-2)!! m σ1^m σ2 ρ² / √(2π)   m even
        (m-2)!! m σ1^m σ2 ρ² / 2       m odd
    """
    if int(m) != m or m <= 2:
        raise DomainError(f"m must be an integer > 2, got {m}")
    m = int(m)
    numer = double_factorial(m - 2) * m * sigma1 ** m * sigma2 * rho * rho
    return numer / math.sqrt(2 * math.pi) if m % 2 == 0 else numer / 2


def integer_pair_bound(m: int, n: int, sigma1: float, sigma2: float, rho: float) -> float:
    r"""
    f for integer exponents m, n > 2: (m-1)!!(n-1)!! m n σ1^m σ2^n ρ² / D with
    D = 2 (both even), π (both odd), √(2π) (mixed parity).
    """
    for k in (m, n):
        if int(k) != k or k <= 2:
            raise DomainError(f"exponents must be integers > 2, got {m}, {n}")
    m, n = int(m), int(n)
    numer = double_factorial(m - 1) * double_factorial(n - 1) * m * n \
        * sigma1 ** m * sigma2 ** n * rho * rho
    if m % 2 == 0 and n % 2 == 0:
        return numer / 2
    if m % 2 == 1 and n % 2 == 1:
        return numer / math.pi
    return numer / math.sqrt(2 * math.pi)


def remark_conditions_hold(spec: MomentSpec) -> bool:
    r"""
    Whether the bounds extend to |ρ| = 1: both exponents positive, both negative
    with α1 + α2 > -1, or opposite signs.
    """
    a1, a2 = spec.alpha1, spec.alpha2
    if a1 > 0 and a2 > 0:
        return True
    if a1 < 0 and a2 < 0:
        return a1 + a2 > -1
    return a1 * a2 < 0


def check_point(spec: MomentSpec, tol: float = DEFAULT_TOLERANCE) -> BoundReport:
    r"""
    Compare the gap with the bound that applies to the sign pattern of the
    exponents. Tolerances are tol * max(1, |gap|). Numerical failures become a
    report with ``satisfied = False`` and the error message. At |ρ| = 1 a point
    failing ``remark_conditions_hold`` is reported with ``extends = False`` and is
    never satisfied.
    """
    try:
        return _check_point(spec, tol)
    except GPIError as e:
        return BoundReport(spec, math.nan, None, Theorem.NONE, False, math.nan,
                           error=f"{type(e).__name__}: {e}", error_code=e.exit_code)


def _check_point(spec: MomentSpec, tol: float) -> BoundReport:
    a1, a2 = spec.alpha1, spec.alpha2
    value = gap(spec)
    if a1 == 0 or a2 == 0:
        return BoundReport(spec, value, None, Theorem.ZERO_EXPONENT, value == 0, 0.0)
    scale = tol * max(1.0, abs(value)) if not math.isinf(value) else 0.0
    extends = not spec.degenerate or remark_conditions_hold(spec)

    if _same_sign(a1, a2):
        bound = same_sign_bound(spec)
        slack = value - bound.value
        return BoundReport(spec, value, bound, Theorem.SAME_SIGN, extends and slack >= -scale, slack,
                           extends=extends)

    bounds = opposite_sign_bounds(spec)
    upper_slack = bounds.upper - value
    if bounds.finite_lower:
        slack = min(value - bounds.lower, upper_slack)
    else:
        slack = upper_slack
    return BoundReport(spec, value, bounds, Theorem.OPPOSITE_SIGN, extends and slack >= -scale, slack,
                       extends=extends)
