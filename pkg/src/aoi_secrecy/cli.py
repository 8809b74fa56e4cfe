"""Command-line front end.

Subcommands: ``analyze`` (closed forms for one scenario), ``optimize``
(welfare-maximizing load), ``asymptote`` (vanishing-capture root),
``simulate`` (discrete-event validation), ``sweep`` (figure tables, with
optional PNG rendering).  Exit status: 0 success, 2 domain error, 3
non-convergence or degenerate simulation, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .core import (
    DomainError,
    SystemParams,
    TradeoffWeight,
    aoi_pair,
    bergson_objective,
    utilities,
)
from .optimize import asymptotic_root, maximize_objective
from .simulate import DegenerateRunError, SimConfig, run
from .sweeps import (
    FIGURE_TO_KIND,
    SweepGrid,
    run_sweep,
    table_filename,
    write_csv,
    write_jsonl,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="aoi-secrecy",
        description="Age-of-information trade-offs against an eavesdropper.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scalar_flags(p, with_rho: bool, with_weight: bool = True) -> None:
        if with_rho:
            p.add_argument("--rho", type=float, required=True,
                           help="offered load in (0, 1)")
        p.add_argument("--mu", type=float, default=1.0, help="service rate")
        p.add_argument("--beta", type=float, default=0.0,
                       help="capture probability in [0, 1]")
        if with_weight:
            p.add_argument("--a", type=float, default=1.0,
                           help="trade-off weight")

    def output_flags(p, choices=("human", "json", "csv")) -> None:
        p.add_argument("--format", choices=choices, default=choices[0])
        p.add_argument("--out", type=Path, default=None,
                       help="write output to this path instead of stdout")

    p = sub.add_parser("analyze", help="closed-form AoI and welfare score")
    scalar_flags(p, with_rho=True)
    output_flags(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("optimize", help="welfare-maximizing load factor")
    scalar_flags(p, with_rho=False)
    output_flags(p)
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("asymptote", help="vanishing-capture asymptote root")
    p.add_argument("--a", type=float, default=1.0, help="trade-off weight")
    output_flags(p)
    p.set_defaults(handler=_cmd_asymptote)

    p = sub.add_parser("simulate", help="discrete-event simulation")
    scalar_flags(p, with_rho=True, with_weight=False)
    p.add_argument("--arrivals", type=int, default=100_000,
                   help="generated packets per replication")
    p.add_argument("--replications", type=int, default=10)
    p.add_argument("--warmup", type=float, default=0.1,
                   help="fraction of the horizon discarded as warmup")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", type=Path, default=None,
                   help="write the first replication's event log to this CSV")
    output_flags(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("sweep", help="figure tables over parameter grids")
    p.add_argument("--figure", required=True,
                   choices=("fig1", "fig2", "fig3", "fig4", "asymptote"))
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--a", type=float, default=None,
                   help="trade-off weight for fig1 (default 1)")
    p.add_argument("--a-values", type=_float_list, default=None,
                   help="comma-separated curve-family weights")
    p.add_argument("--beta-values", type=_float_list, default=None,
                   help="comma-separated curve-family capture probabilities")
    p.add_argument("--grid-rho-min", type=float, default=None)
    p.add_argument("--grid-rho-max", type=float, default=None)
    p.add_argument("--grid-rho-step", type=float, default=None)
    p.add_argument("--grid-beta-min", type=float, default=None)
    p.add_argument("--grid-beta-max", type=float, default=None)
    p.add_argument("--grid-beta-step", type=float, default=None)
    p.add_argument("--grid-a-min", type=float, default=None)
    p.add_argument("--grid-a-max", type=float, default=None)
    p.add_argument("--grid-a-points", type=int, default=None,
                   help="log-spaced point count for the weight axis")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", type=Path, default=Path("."),
                   help="output directory (or exact file path)")
    p.add_argument("--plot", action="store_true",
                   help="also render the table as a PNG next to it")
    p.set_defaults(handler=_cmd_sweep)

    return parser


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage error (64) or --help (0)
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"aoi-secrecy: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DegenerateRunError as exc:
        print(f"aoi-secrecy: degenerate simulation: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def _cmd_analyze(args) -> int:
    params = SystemParams.from_load(args.rho, args.mu, args.beta)
    weight = TradeoffWeight(args.a)
    pair = aoi_pair(params)
    u1, u2 = utilities(params)
    score = None if params.beta == 0.0 else bergson_objective(params, weight)
    _emit({
        "rho": params.rho, "mu": params.mu, "lam": params.lam,
        "beta": params.beta, "a": weight.a,
        "delta_b": pair.delta_b, "delta_e": pair.delta_e,
        "u1": u1, "u2": u2, "f": score,
    }, args)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    result = maximize_objective(args.beta, TradeoffWeight(args.a), args.mu)
    _emit({
        "beta": args.beta, "a": args.a, "mu": args.mu,
        "rho_star": result.rho_star,
        "objective_at_star": result.objective_at_star,
        "iterations": result.iterations,
        "converged": result.converged,
        "bracket_lo": result.bracket[0],
        "bracket_hi": result.bracket[1],
    }, args)
    return EXIT_OK if result.converged else EXIT_NUMERIC


def _cmd_asymptote(args) -> int:
    result = asymptotic_root(TradeoffWeight(args.a))
    _emit({"a": args.a, "rho_tilde": result.rho_tilde,
           "residual": result.residual}, args)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = SimConfig(
        params=SystemParams.from_load(args.rho, args.mu, args.beta),
        num_arrivals=args.arrivals,
        warmup_fraction=args.warmup,
        seed=args.seed,
        num_replications=args.replications,
    )
    result = run(config, event_trace_path=args.trace)
    _emit({
        "rho": args.rho, "mu": args.mu, "beta": args.beta,
        "arrivals": args.arrivals, "replications": args.replications,
        "warmup": args.warmup, "seed": args.seed,
        "delta_b_hat": result.delta_b_hat,
        "delta_e_hat": result.delta_e_hat,
        "ci_halfwidth_b": result.ci_halfwidth_b,
        "ci_halfwidth_e": result.ci_halfwidth_e,
        "eavesdropped_fraction": result.eavesdropped_fraction,
        "sim_horizon": result.sim_horizon,
        "bob_deliveries": result.bob_deliveries,
        "eve_deliveries": result.eve_deliveries,
    }, args)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    grid = _sweep_grid(args)
    table = run_sweep(grid)

    out = args.out
    if out.suffix and not out.is_dir():
        target = out
        out.parent.mkdir(parents=True, exist_ok=True)
    else:
        out.mkdir(parents=True, exist_ok=True)
        target = out / table_filename(table, args.format)
    if args.format == "csv":
        write_csv(table, target)
    else:
        write_jsonl(table, target)
    written = [str(target)]

    if args.plot:
        from .plots import render_table  # matplotlib import stays optional

        png = target.with_suffix(".png")
        render_table(table, png)
        written.append(str(png))
    print("\n".join(written))
    return EXIT_OK


def _pick(flag_value, default):
    return default if flag_value is None else flag_value


def _sweep_grid(args) -> SweepGrid:
    kind = FIGURE_TO_KIND[args.figure]
    grid = SweepGrid.default(kind, mu=args.mu)

    rho_values = grid.rho_values
    if kind == "objective_curve" and (
        args.grid_rho_min is not None or args.grid_rho_max is not None
        or args.grid_rho_step is not None
    ):
        rho_values = _linear_axis(_pick(args.grid_rho_min, 0.01),
                                  _pick(args.grid_rho_max, 0.99),
                                  _pick(args.grid_rho_step, 0.005))

    beta_values = grid.beta_values
    if kind == "rho_star_vs_beta":
        if (args.grid_beta_min is not None or args.grid_beta_max is not None
                or args.grid_beta_step is not None):
            beta_values = _linear_axis(_pick(args.grid_beta_min, 0.05),
                                       _pick(args.grid_beta_max, 1.0),
                                       _pick(args.grid_beta_step, 0.05))
    elif kind != "asymptote_curve" and args.beta_values is not None:
        beta_values = args.beta_values

    a_values = grid.a_values
    if kind == "objective_curve":
        a_values = (_pick(args.a, 1.0),)
    elif kind == "rho_star_vs_beta":
        if args.a_values is not None:
            a_values = args.a_values
    elif (args.grid_a_min is not None or args.grid_a_max is not None
          or args.grid_a_points is not None):
        lo = _pick(args.grid_a_min, 1e-4)
        hi = _pick(args.grid_a_max, 1e2)
        n = _pick(args.grid_a_points, 50)
        a_values = tuple(
            float(v) for v in np.logspace(math.log10(lo), math.log10(hi), n))

    return SweepGrid(kind, rho_values=tuple(rho_values),
                     beta_values=tuple(beta_values),
                     a_values=tuple(a_values), mu=args.mu)


def _linear_axis(lo: float, hi: float, step: float) -> tuple[float, ...]:
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    values = [lo + k * step for k in range(count)]
    # snap accumulated float noise back onto the endpoint
    if values and abs(values[-1] - hi) < 1e-9 * max(1.0, abs(hi)):
        values[-1] = hi
    return tuple(values)


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(payload.keys())
        writer.writerow([_scalar(v) for v in payload.values()])
        text = buffer.getvalue()
    else:
        width = max(len(k) for k in payload)
        lines = []
        for key, value in payload.items():
            lines.append(f"{key:<{width}} = {_scalar(value)}")
        text = "\n".join(lines) + "\n"
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _scalar(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)
