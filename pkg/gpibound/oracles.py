"""
Independent numerical estimates of Gaussian absolute moments.

Nothing here touches the hypergeometric code: quadrature integrates the density
directly and Monte Carlo averages samples, so a bug in the closed forms cannot
validate itself.
"""
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from gpibound.errors import DomainError, InfiniteVarianceError, QuadratureError
from gpibound.moments import MomentSpec
from gpibound.quadrature import integrate

_INV_SQRT_2PI = 1 / math.sqrt(2 * math.pi)
# inner integrals are scaled to order one; below this they do not matter
_INNER_ABS_TOL = 1e-14
MIN_SAMPLES = 10 ** 3


class OracleMethod(str, Enum):
    QUADRATURE = "Quadrature"
    MONTE_CARLO = "MonteCarlo"


@dataclass(frozen=True)
class QuadratureConfig:
    tail_radius_sigmas: float = 12.0
    target_rel_err: float = 1e-9
    max_subdivisions: int = 2 ** 15

    def __post_init__(self):
        if self.tail_radius_sigmas < 8:
            raise DomainError(f"tail_radius_sigmas must be >= 8, got {self.tail_radius_sigmas}")
        if not 0 < self.target_rel_err <= 1e-3:
            raise DomainError(f"target_rel_err must lie in (0, 1e-3], got {self.target_rel_err}")
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be positive, got {self.max_subdivisions}")

    def relaxed(self, attempt: int) -> "QuadratureConfig":
        if attempt == 0:
            return self
        return replace(
            self,
            target_rel_err=min(self.target_rel_err * 10 ** attempt, 1e-3),
            max_subdivisions=self.max_subdivisions * 2 ** attempt,
        )


@dataclass(frozen=True)
class McConfig:
    n_samples: int = 10 ** 6
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < MIN_SAMPLES:
            raise DomainError(f"n_samples must be >= {MIN_SAMPLES}, got {self.n_samples}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    error_estimate: float
    method: OracleMethod


class _Axis:
    r"""
    One half-axis [0, R] of a standardized variable weighted by s^α.

    With substitution u = s^{1+α} the weight is absorbed: s^α ds = du / (1+α),
    which removes the endpoint singularity for α in (-1, 0).
    """

    def __init__(self, alpha, radius, substitute=None):
        if substitute is None:
            substitute = alpha < 0
        self.alpha = alpha
        self.substitute = substitute
        if substitute:
            self.upper = radius ** (1 + alpha)
            self.jacobian = 1 / (1 + alpha)
        else:
            self.upper = radius
            self.jacobian = 1.0

    def point(self, u):
        return u ** (1 / (1 + self.alpha)) if self.substitute else u

    def weight(self, u):
        if self.substitute:
            return np.full_like(u, self.jacobian)
        return u ** self.alpha


def _tail_bound(radius, alpha1, alpha2=0.0):
    # Gaussian mass beyond the radius times the growth of |s|^α there
    growth = radius ** (max(alpha1, 0.0) + max(alpha2, 0.0))
    singular = 1 / ((1 + min(alpha1, 0.0)) * (1 + min(alpha2, 0.0)))
    return 4 * math.erfc(radius / math.sqrt(2)) * growth * singular


def quad_abs_moment_1d(sigma: float, alpha: float, cfg: QuadratureConfig = QuadratureConfig(),
                       substitute=None) -> OracleEstimate:
    r"""
    E|X|^α = σ^α · 2 ∫₀^∞ s^α φ(s) ds by adaptive quadrature on [0, R].
    """
    if not sigma > 0 or not alpha > -1:
        raise DomainError(f"requires sigma > 0 and alpha > -1, got {sigma}, {alpha}")
    axis = _Axis(alpha, cfg.tail_radius_sigmas, substitute)

    def integrand(u):
        s = axis.point(u)
        return 2 * _INV_SQRT_2PI * axis.weight(u) * np.exp(-0.5 * s * s)

    try:
        result = integrate(integrand, 0.0, axis.upper, rel_tol=cfg.target_rel_err,
                           max_subdivisions=cfg.max_subdivisions)
    except QuadratureError as e:
        scale = sigma ** alpha
        raise QuadratureError(str(e), value=scale * e.value, error=scale * e.error)
    scale = sigma ** alpha
    error = result.error + _tail_bound(cfg.tail_radius_sigmas, alpha)
    return OracleEstimate(scale * result.value, scale * error, OracleMethod.QUADRATURE)


def _folded_density(s, t, rho):
    r"""
    φ(s, t) + φ(s, -t) for the standardized pair with correlation ρ, s, t >= 0,
    written with two nonpositive exponents so neither factor overflows.
    """
    one_minus = 1 - rho * rho
    q = (s * s + t * t) / (2 * one_minus)
    w = abs(rho) * s * t / one_minus
    norm = 1 / (2 * math.pi * math.sqrt(one_minus))
    return norm * (np.exp(w - q) + np.exp(-w - q))


def quad_product_moment(spec: MomentSpec, cfg: QuadratureConfig = QuadratureConfig()) -> OracleEstimate:
    r"""
    E|X1|^{α1}|X2|^{α2} = σ1^{α1} σ2^{α2} · 2 ∫₀^R ∫₀^R s^{α1} t^{α2} [φ(s,t) + φ(s,-t)] dt ds
    as an iterated adaptive integral. The inner integral is vector valued over
    all outer abscissae of a pass, so they share one subdivision in t.
    """
    if spec.degenerate:
        raise DomainError("quad_product_moment requires |rho| < 1")
    radius = cfg.tail_radius_sigmas
    outer = _Axis(spec.alpha1, radius)
    inner = _Axis(spec.alpha2, radius)
    inner_tol = 0.1 * cfg.target_rel_err
    rho = spec.rho

    def outer_integrand(u):
        s = outer.point(u)

        def inner_integrand(v):
            t = inner.point(v)
            return inner.weight(v)[:, None] * _folded_density(s[None, :], t[:, None], rho)

        values = integrate(inner_integrand, 0.0, inner.upper, rel_tol=inner_tol,
                           abs_tol=_INNER_ABS_TOL, max_subdivisions=cfg.max_subdivisions).value
        return 2 * outer.weight(u) * values

    scale = spec.sigma1 ** spec.alpha1 * spec.sigma2 ** spec.alpha2
    try:
        result = integrate(outer_integrand, 0.0, outer.upper, rel_tol=cfg.target_rel_err,
                           max_subdivisions=cfg.max_subdivisions)
    except QuadratureError as e:
        raise QuadratureError(str(e), value=scale * e.value, error=scale * e.error)
    # inner relative errors carry through the positive outer integrand
    error = result.error + inner_tol * abs(result.value) \
        + _tail_bound(radius, spec.alpha1, spec.alpha2)
    return OracleEstimate(scale * result.value, scale * error, OracleMethod.QUADRATURE)


def derive_seed(master_seed: int, index: int) -> int:
    r"""
    Seed for grid point ``index``, independent of evaluation order.
    """
    seq = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def sample_bivariate(spec: MomentSpec, n: int, seed: int) -> np.ndarray:
    r"""
    n draws of (X1, X2) as rows: X1 = σ1 Z1, X2 = σ2 (ρ Z1 + √(1-ρ²) Z2), with
    Z from a Philox counter-based generator keyed by ``seed``.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    z = rng.standard_normal((n, 2))
    x = np.empty_like(z)
    x[:, 0] = spec.sigma1 * z[:, 0]
    x[:, 1] = spec.sigma2 * (spec.rho * z[:, 0] + math.sqrt(1 - spec.rho_squared) * z[:, 1])
    return x


def mc_product_moment(spec: MomentSpec, cfg: McConfig = McConfig()) -> OracleEstimate:
    r"""
    Sample mean of |x1|^{α1}|x2|^{α2} with one standard error. Refuses exponents
    at or below -1/2, where the estimator variance is infinite.
    """
    if min(spec.alpha1, spec.alpha2) <= -0.5:
        raise InfiniteVarianceError(
            f"Monte Carlo variance is infinite for min(alpha) = {min(spec.alpha1, spec.alpha2)} <= -0.5; "
            "use the quadrature oracle")
    x = sample_bivariate(spec, cfg.n_samples, cfg.seed)
    values = np.abs(x[:, 0]) ** spec.alpha1 * np.abs(x[:, 1]) ** spec.alpha2
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(cfg.n_samples))
    return OracleEstimate(mean, stderr, OracleMethod.MONTE_CARLO)
