"""End-to-end acceptance gate.

Each test enforces one shipped guarantee at its stated tolerance and
prints a scoreboard line; run

    pytest tests/test_acceptance.py -v -s

to see one PASS/FAIL line per criterion.
"""

import json
import time

import numpy as np

from aoi_secrecy import (
    SimConfig,
    SystemParams,
    TradeoffWeight,
    asymptotic_polynomial,
    asymptotic_root,
    maximize_objective,
    run,
)
from aoi_secrecy.cli import main

DELTA_AT_QUARTER = 61.0 / 12.0


def gate(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def cli_json(capsys, *argv) -> dict:
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0, f"exit {code} for {argv}"
    return json.loads(out)


def test_criterion_1_kaul_yates_optimum(capsys):
    start = time.perf_counter()
    worst = 0.0
    for a in (0.1, 1.0, 10.0):
        payload = cli_json(capsys, "optimize", "--beta", "1", "--a", str(a))
        worst = max(worst, abs(payload["rho_star"] - 0.531))
    elapsed = time.perf_counter() - start
    gate("1 full-capture optimum 0.531 +- 1e-3 for a in {0.1, 1, 10}",
         worst <= 1e-3 and elapsed < 1.0,
         f"worst |rho*-0.531| = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_2_asymptotic_root(capsys):
    start = time.perf_counter()
    payload = cli_json(capsys, "asymptote", "--a", "1")
    root_ok = abs(payload["rho_tilde"] - 0.389) <= 1e-3
    bounds_ok = all(
        asymptotic_polynomial(0.0, TradeoffWeight(a)) == a
        and asymptotic_polynomial(1.0, TradeoffWeight(a)) == -(a + 1.0)
        for a in (0.5, 1.0, 3.0))
    elapsed = time.perf_counter() - start
    gate("2 vanishing-capture root 0.389 +- 1e-3; exact boundary values",
         root_ok and bounds_ok and elapsed < 0.1,
         f"rho_tilde = {payload['rho_tilde']:.6f}, {elapsed * 1e3:.0f}ms")


def test_criterion_3_inverse_beta_limit():
    start = time.perf_counter()
    weight = TradeoffWeight(1e-4)
    worst = 0.0
    for beta in (0.2, 0.5, 0.9):
        f_star = maximize_objective(beta, weight).objective_at_star
        worst = max(worst, abs(f_star * beta - 1.0))
    elapsed = time.perf_counter() - start
    gate("3 f(rho*) -> 1/beta within 1% at a = 1e-4",
         worst <= 0.01 and elapsed < 1.0,
         f"worst rel err = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_4_ceiling_and_monotonicity():
    start = time.perf_counter()
    betas = [k / 100.0 for k in range(5, 101, 5)]
    ceiling_ok, monotone_ok = True, True
    for a in (0.5, 1.0, 2.0):
        weight = TradeoffWeight(a)
        stars = [maximize_objective(b, weight).rho_star for b in betas]
        ceiling_ok &= all(s <= 0.531 + 1e-3 for s in stars)
        monotone_ok &= all(y >= x - 1e-4 for x, y in zip(stars, stars[1:]))
    elapsed = time.perf_counter() - start
    gate("4 rho* <= 0.531 + 1e-3 and non-decreasing in beta",
         ceiling_ok and monotone_ok and elapsed < 10.0,
         f"ceiling={ceiling_ok}, monotone={monotone_ok}, {elapsed:.2f}s")


def test_criterion_5_large_weight_limit():
    start = time.perf_counter()
    weight = TradeoffWeight(100.0)
    worst = max(abs(maximize_objective(b, weight).rho_star - 0.531)
                for b in (0.1, 0.5, 0.9))
    elapsed = time.perf_counter() - start
    gate("5 rho*(beta, a=100) within 1e-2 of 0.531",
         worst <= 1e-2 and elapsed < 1.0,
         f"worst gap = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_6_small_weight_collapse():
    start = time.perf_counter()
    stars = [maximize_objective(0.5, TradeoffWeight(a)).rho_star
             for a in (1e-1, 1e-2, 1e-3)]
    decreasing = stars[0] > stars[1] > stars[2]
    elapsed = time.perf_counter() - start
    gate("6 rho*(0.5, a) strictly decreasing and < 0.1 at a = 1e-3",
         decreasing and stars[2] < 0.1 and elapsed < 1.0,
         f"stars = {[f'{s:.4f}' for s in stars]}, {elapsed:.2f}s")


def test_criterion_7_simulation_vs_theory():
    start = time.perf_counter()
    config = SimConfig(
        params=SystemParams.from_load(0.5, 1.0, 0.5),
        num_arrivals=1_000_000,
        seed=20_240_531,
        num_replications=10,
    )
    result = run(config)
    err_b = abs(result.delta_b_hat / 3.5 - 1.0)
    err_e = abs(result.delta_e_hat / DELTA_AT_QUARTER - 1.0)
    err_frac = abs(result.eavesdropped_fraction / 0.5 - 1.0)
    elapsed = time.perf_counter() - start
    gate("7 simulated ages within 2%/3% of theory, capture within 0.5%",
         err_b <= 0.02 and err_e <= 0.03 and err_frac <= 0.005
         and elapsed < 60.0,
         f"err_b={err_b:.2e}, err_e={err_e:.2e}, err_frac={err_frac:.2e}, "
         f"{elapsed:.1f}s")


def test_criterion_8_oracle_equivalence():
    start = time.perf_counter()
    scan_rho = np.arange(1, 100_000) * 1e-5
    scan_delta_b = 1.0 + 1.0 / scan_rho + scan_rho**2 / (1.0 - scan_rho)
    worst = 0.0
    for beta in [k / 10.0 for k in range(1, 11)]:
        rho_e = beta * scan_rho
        scan_delta_e = 1.0 + 1.0 / rho_e + rho_e**2 / (1.0 - rho_e)
        for a in (0.1, 1.0, 10.0):
            log_f = np.log(scan_delta_e) - (a + 1.0) * np.log(scan_delta_b)
            oracle = float(scan_rho[np.argmax(log_f)])
            solved = maximize_objective(beta, TradeoffWeight(a)).rho_star
            worst = max(worst, abs(solved - oracle))
    elapsed = time.perf_counter() - start
    gate("8 optimizer matches 1e-5-step exhaustive scan within 1e-4",
         worst <= 1e-4 and elapsed < 120.0,
         f"worst gap = {worst:.2e} over 30 cells, {elapsed:.1f}s")


def test_criterion_9_determinism(capsys, tmp_path):
    def sweep_bytes(sub):
        out_dir = tmp_path / sub
        code = main(["sweep", "--figure", "fig2", "--a-values", "0.5,1",
                     "--grid-beta-min", "0.1", "--grid-beta-max", "1.0",
                     "--grid-beta-step", "0.1", "--out", str(out_dir)])
        path = capsys.readouterr().out.strip()
        assert code == 0
        return path.rsplit("/", 1)[-1], open(path, "rb").read()

    name_a, first = sweep_bytes("first")
    name_b, second = sweep_bytes("second")

    sim_argv = ["simulate", "--rho", "0.5", "--beta", "0.5", "--seed", "42",
                "--arrivals", "20000", "--replications", "3",
                "--format", "json"]
    assert main(sim_argv) == 0
    sim_first = capsys.readouterr().out
    assert main(sim_argv) == 0
    sim_second = capsys.readouterr().out

    gate("9 byte-identical sweep reruns and seeded simulate reruns",
         name_a == name_b and first == second and sim_first == sim_second,
         f"table = {name_a}")
