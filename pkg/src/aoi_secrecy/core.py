"""Closed-form average age-of-information (AoI) for FCFS M/M/1 queues and
the weighted-product welfare objective that trades freshness at the
legitimate receiver against staleness at an eavesdropper.

The transmitter generates updates as a Poisson process of rate ``lam`` and
both receivers drain their own FCFS M/M/1 queue at service rate ``mu``.
Each update independently reaches the eavesdropper with probability
``beta``, so by Poisson thinning her queue sees load beta*rho when the
legitimate queue sees rho = lam/mu.

Everything here is a pure function of the scenario parameters; all
expressions are evaluated at unit service rate internally and rescaled by
1/mu at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """A parameter lies outside its mathematical domain."""


@dataclass(frozen=True)
class SystemParams:
    """Physical scenario: arrival rate, service rate, capture probability.

    ``lam`` is the update generation rate, ``mu`` the service rate of both
    receivers' queues, and ``beta`` the i.i.d. per-packet probability that
    the eavesdropper captures a copy.  Stability requires rho = lam/mu < 1;
    the eavesdropper's load beta*rho is then automatically below 1.
    """

    lam: float
    mu: float = 1.0
    beta: float = 0.0

    def __post_init__(self) -> None:
        if not self.lam > 0.0:
            raise DomainError(f"arrival rate must be positive, got {self.lam}")
        if not self.mu > 0.0:
            raise DomainError(f"service rate must be positive, got {self.mu}")
        if not self.lam < self.mu:
            raise DomainError(
                f"queue is unstable: offered load {self.lam / self.mu} >= 1"
            )
        if not 0.0 <= self.beta <= 1.0:
            raise DomainError(f"capture probability must be in [0, 1], got {self.beta}")

    @classmethod
    def from_load(cls, rho: float, mu: float = 1.0, beta: float = 0.0) -> SystemParams:
        """Build parameters from an offered load instead of a raw rate."""
        if not 0.0 < rho < 1.0:
            raise DomainError(f"offered load must lie in (0, 1), got {rho}")
        return cls(lam=rho * mu, mu=mu, beta=beta)

    @property
    def rho(self) -> float:
        """Offered load of the legitimate queue."""
        return self.lam / self.mu

    @property
    def rho_e(self) -> float:
        """Offered load of the eavesdropper's queue (thinned arrivals)."""
        return self.beta * self.rho


@dataclass(frozen=True)
class TradeoffWeight:
    """Exponent ``a`` > 0 steering the freshness-vs-leakage trade-off.

    The receiver's utility enters the welfare product with exponent a + 1,
    so freshness at the legitimate receiver can never be dropped entirely.
    Large ``a`` ignores the eavesdropper; small ``a`` makes keeping her
    stale the dominant goal.  Both limits are probed with finite values,
    never with a = 0.
    """

    a: float = 1.0

    def __post_init__(self) -> None:
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise DomainError(f"trade-off weight must be finite and > 0, got {self.a}")


@dataclass(frozen=True)
class AoiPair:
    """Average AoI at the legitimate receiver and at the eavesdropper.

    ``delta_e`` is +inf when the eavesdropper captures nothing (beta = 0);
    with beta = 1 both channels are statistically identical and
    delta_e == delta_b exactly.
    """

    delta_b: float
    delta_e: float


def _unit_aoi(rho):
    # Raw unit-rate expression, no validation; also evaluated array-wise
    # by the optimizer's grid scan.
    return 1.0 + 1.0 / rho + rho * rho / (1.0 - rho)


def avg_aoi_mm1(rho: float, mu: float = 1.0) -> float:
    """Average AoI of an FCFS M/M/1 queue.

    Returns (1/mu) * (1 + 1/rho + rho^2 / (1 - rho)), the stationary
    time-average age for offered load ``rho`` and service rate ``mu``.
    The expression diverges at both endpoints and has a single interior
    minimum near rho = 0.531.

    Raises:
        DomainError: if rho is outside (0, 1) or mu <= 0.
    """
    if not 0.0 < rho < 1.0:
        raise DomainError(f"offered load must lie in (0, 1), got {rho}")
    if not mu > 0.0:
        raise DomainError(f"service rate must be positive, got {mu}")
    return _unit_aoi(rho) / mu


def aoi_pair(params: SystemParams) -> AoiPair:
    """Average AoI at both receivers for one scenario.

    The eavesdropper's value is the same M/M/1 expression evaluated at her
    thinned load beta*rho.  beta = 0 yields delta_e = +inf (she never
    receives an update); that is a sentinel value, not an error.
    """
    rho = params.rho
    delta_b = avg_aoi_mm1(rho, params.mu)
    if params.beta == 0.0:
        return AoiPair(delta_b=delta_b, delta_e=math.inf)
    return AoiPair(delta_b=delta_b, delta_e=avg_aoi_mm1(params.beta * rho, params.mu))


def utilities(params: SystemParams) -> tuple[float, float]:
    """Competing utilities (u1, u2) = (1/delta_b, delta_e).

    The transmitter wants both large: u1 rewards freshness at the
    legitimate receiver, u2 rewards staleness at the eavesdropper.
    Exposed so the Pareto frontier of the pair can be traced.
    """
    pair = aoi_pair(params)
    return 1.0 / pair.delta_b, pair.delta_e


def bergson_objective(params: SystemParams, weight: TradeoffWeight) -> float:
    """Welfare score f = u1^(a+1) * u2 = delta_e / delta_b^(a+1).

    Computed in log space (log f = log delta_e - (a+1) log delta_b) so the
    denominator cannot overflow for large ``a``.  Finite and positive on
    rho in (0, 1) with beta > 0, and it vanishes as rho -> 1.

    Raises:
        DomainError: if beta = 0, where the score diverges; the
            no-eavesdropper case is handled by the optimizer instead.
    """
    if params.beta == 0.0:
        raise DomainError(
            "objective diverges at beta = 0; use the no-eavesdropper path"
        )
    pair = aoi_pair(params)
    log_f = math.log(pair.delta_e) - (weight.a + 1.0) * math.log(pair.delta_b)
    return math.exp(log_f)
