"""Load-factor optimizers.

Three related problems share this module: minimizing the plain M/M/1 AoI
(optimum near rho = 0.531, independent of the service rate), maximizing
the welfare objective against an eavesdropper, and locating the unique
root in (0, 1) of the quartic that the optimum approaches as the capture
probability vanishes.

The welfare curve flattens near rho = 1 for large capture probabilities,
so the maximizer first scans a coarse grid to bracket the global maximum
and only then refines the bracket with golden-section search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DomainError,
    SystemParams,
    TradeoffWeight,
    _unit_aoi,
    avg_aoi_mm1,
    bergson_objective,
)

# Delta has poles at rho = 0 and rho = 1; the search domain stays inside.
RHO_MIN = 1e-6
RHO_MAX = 1.0 - 1e-6
GRID_POINTS = 1000
BRACKET_TOL = 1e-9
ROOT_TOL = 1e-10

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_COARSE_GRID = np.linspace(RHO_MIN, RHO_MAX, GRID_POINTS)


@dataclass(frozen=True)
class OptimResult:
    """Outcome of a scalar load optimization.

    ``objective_at_star`` is the maximized welfare score, except for the
    pure freshness problem where it is the minimal average AoI.
    ``iterations`` counts objective evaluations (grid scan included).
    """

    rho_star: float
    objective_at_star: float
    iterations: int
    converged: bool
    bracket: tuple[float, float]


@dataclass(frozen=True)
class AsymptoteResult:
    """Root of the vanishing-capture quartic and the residual there."""

    rho_tilde: float
    residual: float


def _golden_max(fn, lo: float, hi: float, tol: float = BRACKET_TOL):
    """Golden-section maximization of a unimodal function on [lo, hi]."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = fn(c), fn(d)
    evals = 2
    while hi - lo > tol and evals < 200:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = fn(d)
        evals += 1
    return lo, hi, evals


def _bracketed_max(scalar_fn, grid_values) -> tuple[float, float, int, bool]:
    i = int(np.argmax(grid_values))
    lo = _COARSE_GRID[max(i - 1, 0)]
    hi = _COARSE_GRID[min(i + 1, GRID_POINTS - 1)]
    lo, hi, evals = _golden_max(scalar_fn, float(lo), float(hi))
    converged = (hi - lo) <= BRACKET_TOL
    return lo, hi, GRID_POINTS + evals, converged


def minimize_aoi(mu: float = 1.0) -> OptimResult:
    """Load factor minimizing the average AoI of an FCFS M/M/1 queue.

    The minimizer is dimensionless and does not depend on ``mu``; only the
    minimal AoI value rescales.  The optimum sits near rho = 0.531, where
    the server is kept slightly busier than idle.
    """
    if not mu > 0.0:
        raise DomainError(f"service rate must be positive, got {mu}")
    lo, hi, evals, converged = _bracketed_max(
        lambda r: -_unit_aoi(r), -_unit_aoi(_COARSE_GRID)
    )
    rho_star = 0.5 * (lo + hi)
    return OptimResult(
        rho_star=rho_star,
        objective_at_star=avg_aoi_mm1(rho_star, mu),
        iterations=evals,
        converged=converged,
        bracket=(lo, hi),
    )


def maximize_objective(
    beta: float, weight: TradeoffWeight, mu: float = 1.0
) -> OptimResult:
    """Load factor maximizing the welfare score for a given eavesdropper.

    With beta = 0 the eavesdropper is absent and the problem degenerates
    to minimizing the legitimate receiver's AoI, so that path is taken
    instead (the score itself is undefined there).  Note the limit
    beta -> 0+ does NOT approach this special case: it converges to the
    root of the vanishing-capture quartic, see :func:`asymptotic_root`.

    The returned optimum always satisfies rho_star <= 0.531 up to solver
    tolerance: any capture pressure only slows the transmitter down.
    """
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"capture probability must be in [0, 1], got {beta}")
    if not mu > 0.0:
        raise DomainError(f"service rate must be positive, got {mu}")
    if beta == 0.0:
        return minimize_aoi(mu)

    a = weight.a

    def log_f(r: float) -> float:
        return math.log(_unit_aoi(beta * r)) - (a + 1.0) * math.log(_unit_aoi(r))

    grid_vals = np.log(_unit_aoi(beta * _COARSE_GRID)) - (a + 1.0) * np.log(
        _unit_aoi(_COARSE_GRID)
    )
    lo, hi, evals, converged = _bracketed_max(log_f, grid_vals)
    rho_star = 0.5 * (lo + hi)
    score = bergson_objective(SystemParams.from_load(rho_star, mu, beta), weight)
    return OptimResult(
        rho_star=rho_star,
        objective_at_star=score,
        iterations=evals,
        converged=converged,
        bracket=(lo, hi),
    )


def asymptotic_polynomial(rho: float, weight: TradeoffWeight) -> float:
    """Quartic g(rho) = (a+2)(rho^4 - 2 rho^3 + rho^2) - (2a+1) rho + a.

    As the capture probability tends to 0+, the welfare derivative keeps
    the sign of g, so the limiting optimum is the root of g in (0, 1).
    Evaluated in Horner form; the boundary values g(0) = a and
    g(1) = -(a+1) come out exact.
    """
    a = weight.a
    return (
        (((a + 2.0) * rho - 2.0 * (a + 2.0)) * rho + (a + 2.0)) * rho - (2.0 * a + 1.0)
    ) * rho + a


def asymptotic_root(weight: TradeoffWeight) -> AsymptoteResult:
    """Unique root in (0, 1) of the vanishing-capture quartic.

    Existence follows from the opposite boundary signs g(0) = a > 0 and
    g(1) = -(a+1) < 0; uniqueness from the derivative
    g'(rho) = 2 rho (a+2)(rho-1)(2 rho-1) - 2a - 1 being negative on the
    whole interval.  Plain sign bisection is therefore guaranteed to
    converge; the bracket is narrowed to width 1e-10.  The residual scales
    with ``a`` since g itself does.
    """
    a = weight.a
    lo, hi = 0.0, 1.0  # g(lo) = a > 0, g(hi) = -(a+1) < 0
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if asymptotic_polynomial(mid, weight) > 0.0:
            lo = mid
        else:
            hi = mid
    rho_tilde = 0.5 * (lo + hi)
    return AsymptoteResult(
        rho_tilde=rho_tilde, residual=asymptotic_polynomial(rho_tilde, weight)
    )
