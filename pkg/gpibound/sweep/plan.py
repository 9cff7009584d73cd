import itertools
from dataclasses import dataclass, fields
from enum import Enum
from typing import Sequence

from gpibound.bounds import DEFAULT_TOLERANCE
from gpibound.errors import DomainError
from gpibound.moments import MomentSpec
from gpibound.oracles import MIN_SAMPLES
from gpibound.sweep.callbacks import (
    BuildRow, CheckBounds, ClosedForm, CompareOracles, MonteCarloOracle, QuadratureOracle,
)
from gpibound.sweep.runner import Runner


class OracleChoice(str, Enum):
    NONE = "none"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "montecarlo"
    BOTH = "both"

    @property
    def quadrature(self):
        return self in (OracleChoice.QUADRATURE, OracleChoice.BOTH)

    @property
    def monte_carlo(self):
        return self in (OracleChoice.MONTE_CARLO, OracleChoice.BOTH)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class SweepConfig:
    alpha1_values: Sequence[float]
    alpha2_values: Sequence[float]
    rho_values: Sequence[float]
    sigma1_values: Sequence[float] = (1.0,)
    sigma2_values: Sequence[float] = (1.0,)
    tolerance: float = DEFAULT_TOLERANCE
    oracle: OracleChoice = OracleChoice.NONE
    mc_samples: int = 10 ** 6
    master_seed: int = 0
    output_format: OutputFormat = OutputFormat.JSON

    def __post_init__(self):
        for name in ("alpha1_values", "alpha2_values", "rho_values", "sigma1_values", "sigma2_values"):
            values = tuple(float(x) for x in getattr(self, name))
            if not values:
                raise DomainError(f"{name} must not be empty")
            object.__setattr__(self, name, values)
        for a in self.alpha1_values + self.alpha2_values:
            if not a > -1:
                raise DomainError(f"exponents must exceed -1, got {a}")
        for r in self.rho_values:
            if not abs(r) <= 1:
                raise DomainError(f"|rho| must not exceed 1, got {r}")
        for s in self.sigma1_values + self.sigma2_values:
            if not s > 0:
                raise DomainError(f"sigmas must be positive, got {s}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")
        if self.mc_samples < MIN_SAMPLES:
            raise DomainError(f"mc_samples must be >= {MIN_SAMPLES}, got {self.mc_samples}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise DomainError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        object.__setattr__(self, "oracle", OracleChoice(self.oracle))
        object.__setattr__(self, "output_format", OutputFormat(self.output_format))


@dataclass(frozen=True)
class Summary:
    checked: int
    satisfied: int
    violated: int
    vacuous: int
    errored: int
    oracle_mismatch: int
    # |ρ| = 1 points where the bounds are not known to hold
    unsupported: int = 0

    @classmethod
    def from_rows(cls, rows) -> "Summary":
        violated = errored = vacuous = mismatch = satisfied = unsupported = 0
        for row in rows:
            if row.error is not None:
                errored += 1
            elif "unsupported" in row.flags:
                unsupported += 1
            elif row.satisfied:
                satisfied += 1
            else:
                violated += 1
            if row.finite_lower is False:
                vacuous += 1
            if "quadrature_mismatch" in row.flags or "mc_outlier" in row.flags:
                mismatch += 1
        return cls(len(rows), satisfied, violated, vacuous, errored, mismatch, unsupported)

    @property
    def exit_code(self):
        if self.violated:
            return 1
        if self.errored:
            return 3
        return 0

    def format(self):
        return " ".join(f"{f.name}={getattr(self, f.name)}" for f in fields(self))


class Sweep:
    r"""
    A verification grid. Subclasses fix the grid with class attributes and may
    restrict the exponent pairs with ``accept_pair``; keyword arguments to the
    constructor override any attribute.

    Examples::
        >>> sweep = Sweep(alpha1_values=[1], alpha2_values=[1], rho_values=[0, 0.5])
        >>> [spec.rho for _, spec in sweep.grid()]
        [0.0, 0.5]
    """

    alpha1_values: Sequence[float] = (1.0,)
    alpha2_values: Sequence[float] = (1.0,)
    rho_values: Sequence[float] = (0.0,)
    sigma1_values: Sequence[float] = (1.0,)
    sigma2_values: Sequence[float] = (1.0,)
    tolerance: float = DEFAULT_TOLERANCE
    oracle: OracleChoice = OracleChoice.NONE
    mc_samples: int = 10 ** 6
    master_seed: int = 0
    output_format: OutputFormat = OutputFormat.JSON

    def __init__(self, **overrides):
        settings = {}
        for f in fields(SweepConfig):
            value = overrides.pop(f.name, None)
            settings[f.name] = getattr(self, f.name) if value is None else value
        if overrides:
            raise TypeError(f"Unknown sweep settings: {sorted(overrides)}")
        self.config = SweepConfig(**settings)

    def accept_pair(self, alpha1, alpha2):
        return True

    def pairs(self):
        cfg = self.config
        return [(a1, a2) for a1, a2 in itertools.product(cfg.alpha1_values, cfg.alpha2_values)
                if self.accept_pair(a1, a2)]

    def grid(self):
        cfg = self.config
        points = itertools.product(self.pairs(), cfg.rho_values, cfg.sigma1_values, cfg.sigma2_values)
        for index, ((a1, a2), rho, s1, s2) in enumerate(points):
            yield index, MomentSpec(s1, s2, a1, a2, rho)

    def callbacks(self):
        cfg = self.config
        callbacks = [CheckBounds(cfg.tolerance)]
        if cfg.oracle.quadrature or cfg.oracle.monte_carlo:
            callbacks.append(ClosedForm())
        if cfg.oracle.quadrature:
            callbacks.append(QuadratureOracle())
        if cfg.oracle.monte_carlo:
            callbacks.append(MonteCarloOracle(cfg.mc_samples, cfg.master_seed))
        if cfg.oracle.quadrature or cfg.oracle.monte_carlo:
            callbacks.append(CompareOracles())
        callbacks.append(BuildRow())
        return callbacks

    def run(self, jobs=None):
        return Runner(jobs).run(self.grid(), self.callbacks())

    @staticmethod
    def summary(rows) -> Summary:
        return Summary.from_rows(rows)
