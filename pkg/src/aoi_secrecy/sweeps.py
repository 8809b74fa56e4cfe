"""Parameter sweeps over the trade-off landscape.

Each sweep evaluates one family of curves on a fixed grid and returns a
flat table: welfare curves over the load factor (fig1), optimal load
versus capture probability (fig2), optimal welfare value versus trade-off
weight (fig3), optimal load versus weight with its vanishing-capture
asymptote (fig4), and the asymptote alone.  Tables carry the full input
grid; a failing cell keeps its row with a status note instead of being
dropped.  All evaluation is analytic, so repeated runs serialize byte
for byte.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import DomainError, SystemParams, TradeoffWeight, bergson_objective
from .optimize import asymptotic_root, maximize_objective

# Rounded reference for the unconstrained AoI optimum; the shaded-region
# column tolerates its print precision.
CEILING_RHO = 0.531
CEILING_SLACK = 1e-3

KINDS = (
    "objective_curve",
    "rho_star_vs_beta",
    "f_star_vs_a",
    "rho_star_vs_a",
    "asymptote_curve",
)
KIND_TO_FIGURE = {
    "objective_curve": "fig1",
    "rho_star_vs_beta": "fig2",
    "f_star_vs_a": "fig3",
    "rho_star_vs_a": "fig4",
    "asymptote_curve": "asymptote",
}
FIGURE_TO_KIND = {fig: kind for kind, fig in KIND_TO_FIGURE.items()}


@dataclass(frozen=True)
class Table:
    """Flat sweep output: column names plus one tuple per grid cell."""

    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    grid_key: str

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def default_rho_grid() -> tuple[float, ...]:
    return tuple(k / 1000.0 for k in range(10, 991, 5))


def default_beta_grid() -> tuple[float, ...]:
    return tuple(k / 100.0 for k in range(5, 101, 5))


def default_a_grid() -> tuple[float, ...]:
    return tuple(float(a) for a in np.logspace(-4.0, 2.0, 50))


@dataclass(frozen=True)
class SweepGrid:
    """Grid description for one sweep kind.

    Only the axes a kind actually uses are validated against it: the
    curve-family axis and the x axis.  ``objective_curve`` takes a single
    trade-off weight, so its a_values must have length one.
    """

    output_kind: str
    rho_values: tuple[float, ...] = ()
    beta_values: tuple[float, ...] = ()
    a_values: tuple[float, ...] = ()
    mu: float = 1.0

    def __post_init__(self) -> None:
        if self.output_kind not in KINDS:
            raise DomainError(f"unknown sweep kind {self.output_kind!r}")
        if not self.mu > 0.0:
            raise DomainError(f"service rate must be positive, got {self.mu}")
        kind = self.output_kind
        if kind == "objective_curve":
            _check_axis("rho", self.rho_values, 0.0, 1.0, open_ends=(True, True))
            _check_axis("beta", self.beta_values, 0.0, 1.0, open_ends=(True, False))
            if len(self.a_values) != 1:
                raise DomainError("objective_curve sweeps a single weight")
            _check_axis("a", self.a_values, 0.0, math.inf, open_ends=(True, True))
        elif kind == "rho_star_vs_beta":
            _check_axis("beta", self.beta_values, 0.0, 1.0, open_ends=(False, False))
            _check_axis("a", self.a_values, 0.0, math.inf, open_ends=(True, True))
        elif kind == "f_star_vs_a":
            _check_axis("beta", self.beta_values, 0.0, 1.0, open_ends=(True, False))
            _check_axis("a", self.a_values, 0.0, math.inf, open_ends=(True, True))
        elif kind == "rho_star_vs_a":
            _check_axis("beta", self.beta_values, 0.0, 1.0, open_ends=(False, False))
            _check_axis("a", self.a_values, 0.0, math.inf, open_ends=(True, True))
        else:  # asymptote_curve
            _check_axis("a", self.a_values, 0.0, math.inf, open_ends=(True, True))

    @classmethod
    def default(cls, output_kind: str, mu: float = 1.0) -> SweepGrid:
        kind = FIGURE_TO_KIND.get(output_kind, output_kind)
        if kind == "objective_curve":
            return cls(kind, rho_values=default_rho_grid(),
                       beta_values=(0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0),
                       a_values=(1.0,), mu=mu)
        if kind == "rho_star_vs_beta":
            return cls(kind, beta_values=default_beta_grid(),
                       a_values=(0.5, 1.0, 2.0), mu=mu)
        if kind == "f_star_vs_a":
            return cls(kind, beta_values=(0.2, 0.5, 0.9, 1.0),
                       a_values=default_a_grid(), mu=mu)
        if kind == "rho_star_vs_a":
            return cls(kind, beta_values=(0.1, 0.3, 0.5, 1.0),
                       a_values=default_a_grid(), mu=mu)
        return cls("asymptote_curve", a_values=default_a_grid(), mu=mu)


def _check_axis(name, values, lo, hi, open_ends) -> None:
    if not values:
        raise DomainError(f"{name} grid must not be empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise DomainError(f"{name} grid must be strictly increasing")
    low_ok = values[0] > lo if open_ends[0] else values[0] >= lo
    high_ok = values[-1] < hi if open_ends[1] else values[-1] <= hi
    if not (low_ok and high_ok):
        raise DomainError(f"{name} grid leaves the valid domain")


def fig1_objective_curves(
    beta_values, weight: TradeoffWeight, rho_values, mu: float = 1.0
) -> Table:
    """Welfare score per load factor, one curve per capture probability.

    The per-curve grid argmax row is flagged in ``is_argmax``; connecting
    those points traces how the optimum migrates as the eavesdropper
    strengthens.
    """
    grid = SweepGrid("objective_curve", rho_values=tuple(rho_values),
                     beta_values=tuple(beta_values), a_values=(weight.a,), mu=mu)
    rows = []
    for beta in grid.beta_values:
        scores = []
        for rho in grid.rho_values:
            try:
                scores.append(bergson_objective(
                    SystemParams.from_load(rho, mu, beta), weight))
            except DomainError:
                scores.append(math.nan)
        finite = np.nan_to_num(np.array(scores), nan=-math.inf)
        argmax = int(np.argmax(finite))
        for j, rho in enumerate(grid.rho_values):
            status = "ok" if math.isfinite(scores[j]) else "domain_error"
            rows.append((beta, rho, scores[j], int(j == argmax), status))
    return Table(
        name="fig1",
        columns=("beta", "rho", "f", "is_argmax", "status"),
        rows=tuple(rows),
        grid_key=_grid_key("fig1", grid),
    )


def fig2_rho_star_vs_beta(a_values, beta_values, mu: float = 1.0) -> Table:
    """Optimal load per capture probability, one curve per weight."""
    grid = SweepGrid("rho_star_vs_beta", beta_values=tuple(beta_values),
                     a_values=tuple(a_values), mu=mu)
    rows = []
    for a in grid.a_values:
        weight = TradeoffWeight(a)
        for beta in grid.beta_values:
            rho_star, status = _try_optimize(beta, weight, mu)
            below = int(rho_star <= CEILING_RHO + CEILING_SLACK)
            rows.append((a, beta, rho_star, below, status))
    return Table(
        name="fig2",
        columns=("a", "beta", "rho_star", "below_ceiling", "status"),
        rows=tuple(rows),
        grid_key=_grid_key("fig2", grid),
    )


def fig3_f_star_vs_a(beta_values, a_values, mu: float = 1.0) -> Table:
    """Optimal welfare value per weight, one curve per capture probability."""
    grid = SweepGrid("f_star_vs_a", beta_values=tuple(beta_values),
                     a_values=tuple(a_values), mu=mu)
    rows = []
    for beta in grid.beta_values:
        for a in grid.a_values:
            try:
                res = maximize_objective(beta, TradeoffWeight(a), mu)
                status = "ok" if res.converged else "non_converged"
                rows.append((beta, a, res.objective_at_star, status))
            except DomainError as exc:
                rows.append((beta, a, math.nan, f"domain_error: {exc}"))
    return Table(
        name="fig3",
        columns=("beta", "a", "f_star", "status"),
        rows=tuple(rows),
        grid_key=_grid_key("fig3", grid),
    )


def fig4_rho_star_vs_a(beta_values, a_values, mu: float = 1.0) -> Table:
    """Optimal load per weight with the vanishing-capture asymptote.

    ``rho_tilde`` depends only on the weight; it is repeated on each row
    so every curve can be compared against the asymptote it approaches.
    """
    grid = SweepGrid("rho_star_vs_a", beta_values=tuple(beta_values),
                     a_values=tuple(a_values), mu=mu)
    tilde = {a: asymptotic_root(TradeoffWeight(a)).rho_tilde for a in grid.a_values}
    rows = []
    for beta in grid.beta_values:
        for a in grid.a_values:
            rho_star, status = _try_optimize(beta, TradeoffWeight(a), mu)
            rows.append((beta, a, rho_star, tilde[a], status))
    return Table(
        name="fig4",
        columns=("beta", "a", "rho_star", "rho_tilde", "status"),
        rows=tuple(rows),
        grid_key=_grid_key("fig4", grid),
    )


def asymptote_curve(a_values) -> Table:
    """Vanishing-capture asymptote of the optimal load, per weight."""
    grid = SweepGrid("asymptote_curve", a_values=tuple(a_values))
    rows = []
    for a in grid.a_values:
        res = asymptotic_root(TradeoffWeight(a))
        rows.append((a, res.rho_tilde, res.residual, "ok"))
    return Table(
        name="asymptote",
        columns=("a", "rho_tilde", "residual", "status"),
        rows=tuple(rows),
        grid_key=_grid_key("asymptote", grid),
    )


def run_sweep(grid: SweepGrid) -> Table:
    """Evaluate a sweep described by a grid object."""
    kind = grid.output_kind
    if kind == "objective_curve":
        return fig1_objective_curves(
            grid.beta_values, TradeoffWeight(grid.a_values[0]),
            grid.rho_values, grid.mu)
    if kind == "rho_star_vs_beta":
        return fig2_rho_star_vs_beta(grid.a_values, grid.beta_values, grid.mu)
    if kind == "f_star_vs_a":
        return fig3_f_star_vs_a(grid.beta_values, grid.a_values, grid.mu)
    if kind == "rho_star_vs_a":
        return fig4_rho_star_vs_a(grid.beta_values, grid.a_values, grid.mu)
    return asymptote_curve(grid.a_values)


def _try_optimize(beta, weight, mu) -> tuple[float, str]:
    try:
        res = maximize_objective(beta, weight, mu)
        return res.rho_star, "ok" if res.converged else "non_converged"
    except DomainError as exc:
        return math.nan, f"domain_error: {exc}"


def _grid_key(name: str, grid: SweepGrid) -> str:
    return (
        f"{name};mu={grid.mu!r};rho={grid.rho_values!r};"
        f"beta={grid.beta_values!r};a={grid.a_values!r}"
    )


def table_filename(table: Table, fmt: str = "csv") -> str:
    """Deterministic file name: figure id plus a digest of the grid."""
    digest = hashlib.sha256(table.grid_key.encode("utf-8")).hexdigest()[:12]
    return f"{table.name}_{digest}.{fmt}"


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(table: Table, path: str | Path) -> Path:
    """RFC-4180 CSV with a header row and '.' decimal separators."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_cell(v) for v in row])
    return path


def write_jsonl(table: Table, path: str | Path) -> Path:
    """One JSON object per grid cell, keys in column order."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        for row in table.rows:
            handle.write(json.dumps(dict(zip(table.columns, row))) + "\n")
    return path
