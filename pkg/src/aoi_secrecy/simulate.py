"""Discrete-event simulation of the update pipeline.

A Poisson source feeds the legitimate receiver's FCFS M/M/1 queue, and
each packet is independently copied (probability ``beta``) into the
eavesdropper's own FCFS M/M/1 queue of the same service rate.  Departure
epochs follow the Lindley recursion
``depart[i] = max(arrive[i], depart[i-1]) + service[i]`` per queue.

The instantaneous age at a receiver grows at unit slope and drops at each
delivery to the delivered packet's system time (generation-to-delivery
delay); zero propagation delay means generation stamps are shared by all
parties, but queueing still ages every update.  Time-average age is the
exact area under this sawtooth divided by the measured horizon, after
discarding a warmup fraction.  The horizon of a receiver ends at its last
observed departure, so no artificially open final segment biases the mean.

Randomness comes from a seeded generator with separate spawned streams
for arrivals, legitimate service, and eavesdropper service plus capture
coins; replications are therefore reproducible bit for bit and may be
compared across parameterizations with common random numbers.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import DomainError, SystemParams

Z_95 = 1.96  # normal-approximation 95% interval across replications


class DegenerateRunError(RuntimeError):
    """A receiver saw fewer than two post-warmup deliveries."""


class EmptyTraceError(ValueError):
    """An age trace carries no deliveries and no initial age."""


@dataclass(frozen=True)
class SimConfig:
    """Simulation run description; the seed is part of the experiment."""

    params: SystemParams
    num_arrivals: int
    warmup_fraction: float = 0.1
    seed: int = 0
    num_replications: int = 10

    def __post_init__(self) -> None:
        if self.num_arrivals < 1:
            raise DomainError(f"need at least one arrival, got {self.num_arrivals}")
        if not 0.0 <= self.warmup_fraction < 0.5:
            raise DomainError(
                f"warmup fraction must lie in [0, 0.5), got {self.warmup_fraction}"
            )
        if self.num_replications < 1:
            raise DomainError(
                f"need at least one replication, got {self.num_replications}"
            )
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit value, got {self.seed}")


@dataclass(frozen=True)
class SimResult:
    """Empirical time-average AoI with replication confidence intervals.

    ``delta_e_hat`` and ``ci_halfwidth_e`` are None when the eavesdropper
    cannot receive anything (beta = 0).  Halfwidths are NaN for a single
    replication.  ``sim_horizon`` is the mean simulated time span.
    """

    delta_b_hat: float
    delta_e_hat: float | None
    ci_halfwidth_b: float
    ci_halfwidth_e: float | None
    eavesdropped_fraction: float
    sim_horizon: float
    bob_deliveries: int
    eve_deliveries: int


@dataclass(frozen=True)
class AgeTrace:
    """Sawtooth checkpoints of one receiver.

    Each delivery resets the age from ``age_before_reset`` down to
    ``age_after_reset`` (the packet's system time); between deliveries the
    age grows at unit slope.  ``initial_age`` anchors the ramp at t = 0;
    None means the pre-first-delivery state is unknown.
    """

    delivery_times: np.ndarray
    age_after_reset: np.ndarray
    age_before_reset: np.ndarray
    initial_age: float | None = 0.0

    def __post_init__(self) -> None:
        d = self.delivery_times
        if not (d.shape == self.age_after_reset.shape == self.age_before_reset.shape):
            raise ValueError("trace arrays must have identical shapes")
        if d.size:
            if not np.all(np.diff(d) > 0.0):
                raise ValueError("delivery times must be strictly increasing")
            if not np.all(self.age_after_reset >= 0.0):
                raise ValueError("age after a reset cannot be negative")
            if not np.all(self.age_before_reset >= self.age_after_reset):
                raise ValueError("a delivery cannot increase the age")


def lindley_departures(arrival_times, service_times) -> np.ndarray:
    """Departure epochs of a single-server FCFS queue.

    Vectorized form of ``depart[i] = max(arrive[i], depart[i-1]) +
    service[i]``: with C the cumulative service time,
    depart[i] = C[i] + max over j <= i of (arrive[j] - C[j-1]).
    """
    arrivals = np.asarray(arrival_times, dtype=float)
    services = np.asarray(service_times, dtype=float)
    if arrivals.shape != services.shape:
        raise ValueError("arrival and service arrays must have the same length")
    if arrivals.size == 0:
        return np.empty(0, dtype=float)
    served = np.cumsum(services)
    slack = arrivals - (served - services)
    return served + np.maximum.accumulate(slack)


def build_age_trace(
    generation_times, delivery_times, initial_age: float = 0.0
) -> AgeTrace:
    """Assemble the sawtooth checkpoints of one receiver.

    Only packets strictly fresher than the receiver's current state may
    reset the age; staler deliveries are dropped.  Under FCFS with a
    shared generation clock this guard never fires for the legitimate
    receiver, but it is enforced for both.
    """
    gen = np.asarray(generation_times, dtype=float)
    dep = np.asarray(delivery_times, dtype=float)
    if gen.shape != dep.shape:
        raise ValueError("generation and delivery arrays must have the same length")
    if gen.size:
        freshest_so_far = np.concatenate(([-np.inf], np.maximum.accumulate(gen)[:-1]))
        keep = gen > freshest_so_far
        gen, dep = gen[keep], dep[keep]
    after = dep - gen
    before = np.empty_like(after)
    if dep.size:
        before[0] = initial_age + dep[0]
        before[1:] = after[:-1] + np.diff(dep)
    return AgeTrace(
        delivery_times=dep,
        age_after_reset=after,
        age_before_reset=before,
        initial_age=initial_age,
    )


def age_integral(trace: AgeTrace, horizon_start: float, horizon_end: float) -> float:
    """Exact area under the sawtooth restricted to the horizon.

    The age is piecewise linear with unit slope, so each inter-delivery
    segment contributes a trapezoid; dividing the total by the horizon
    length yields the empirical average age.

    Raises:
        EmptyTraceError: if the trace has no deliveries and no initial age.
        ValueError: on an empty or negative horizon.
    """
    if not horizon_end > horizon_start:
        raise ValueError("horizon must have positive length")
    if horizon_start < 0.0:
        raise ValueError("horizon cannot start before the trace clock")
    d = trace.delivery_times
    if d.size == 0 and trace.initial_age is None:
        raise EmptyTraceError("trace carries no age information")

    last_before = int(np.searchsorted(d, horizon_start, side="right")) - 1
    if last_before < 0:
        if trace.initial_age is None:
            raise EmptyTraceError("age before the first delivery is unknown")
        age_at_start = trace.initial_age + horizon_start
    else:
        age_at_start = float(
            trace.age_after_reset[last_before] + (horizon_start - d[last_before])
        )

    inside = (d > horizon_start) & (d < horizon_end)
    starts = np.concatenate(([horizon_start], d[inside]))
    ages = np.concatenate(([age_at_start], trace.age_after_reset[inside]))
    widths = np.diff(np.concatenate((starts, [horizon_end])))
    return float(np.sum(widths * ages + 0.5 * widths * widths))


@dataclass(frozen=True)
class _Replication:
    generation_times: np.ndarray
    bob_departures: np.ndarray
    captured_ids: np.ndarray
    eve_departures: np.ndarray


def _simulate_once(params: SystemParams, n: int, seed_seq) -> _Replication:
    arrival_seq, bob_seq, eve_seq = seed_seq.spawn(3)
    rng_arrivals = np.random.default_rng(arrival_seq)
    rng_bob = np.random.default_rng(bob_seq)
    rng_eve = np.random.default_rng(eve_seq)

    gen = np.cumsum(rng_arrivals.exponential(1.0 / params.lam, n))
    bob_dep = lindley_departures(gen, rng_bob.exponential(1.0 / params.mu, n))

    captured = np.flatnonzero(rng_eve.random(n) < params.beta)
    eve_dep = lindley_departures(
        gen[captured], rng_eve.exponential(1.0 / params.mu, captured.size)
    )
    return _Replication(gen, bob_dep, captured, eve_dep)


def _mean_age(trace: AgeTrace, warmup_fraction: float) -> float:
    horizon_end = float(trace.delivery_times[-1])
    horizon_start = warmup_fraction * horizon_end
    if int(np.count_nonzero(trace.delivery_times > horizon_start)) < 2:
        raise DegenerateRunError("fewer than two post-warmup deliveries")
    area = age_integral(trace, horizon_start, horizon_end)
    return area / (horizon_end - horizon_start)


def _ci_halfwidth(values: list[float]) -> float:
    if len(values) < 2:
        return math.nan
    return Z_95 * float(np.std(values, ddof=1)) / math.sqrt(len(values))


def run(config: SimConfig, event_trace_path: str | Path | None = None) -> SimResult:
    """Simulate the configured scenario and estimate both average ages.

    Replications use independent spawned RNG streams and are merged in
    replication order, so identical configs give bit-identical results.
    If ``event_trace_path`` is set, the first replication's event log is
    written there as CSV.

    Raises:
        DegenerateRunError: if any receiver that can receive packets sees
            fewer than two post-warmup deliveries in some replication.
    """
    params = config.params
    rep_seqs = np.random.SeedSequence(config.seed).spawn(config.num_replications)

    bob_means: list[float] = []
    eve_means: list[float] = []
    fractions: list[float] = []
    horizons: list[float] = []
    eve_total = 0
    for index, seq in enumerate(rep_seqs):
        rep = _simulate_once(params, config.num_arrivals, seq)
        if index == 0 and event_trace_path is not None:
            _write_event_trace(event_trace_path, rep)

        bob_means.append(_mean_age(build_age_trace(
            rep.generation_times, rep.bob_departures), config.warmup_fraction))
        fractions.append(rep.captured_ids.size / config.num_arrivals)
        eve_total += int(rep.captured_ids.size)

        horizon = float(rep.bob_departures[-1])
        if rep.eve_departures.size:
            horizon = max(horizon, float(rep.eve_departures[-1]))
        horizons.append(horizon)

        if params.beta > 0.0:
            if rep.captured_ids.size < 2:
                raise DegenerateRunError(
                    "eavesdropper captured fewer than two packets; "
                    "increase num_arrivals or beta"
                )
            eve_means.append(_mean_age(build_age_trace(
                rep.generation_times[rep.captured_ids], rep.eve_departures),
                config.warmup_fraction))

    has_eve = params.beta > 0.0
    return SimResult(
        delta_b_hat=float(np.mean(bob_means)),
        delta_e_hat=float(np.mean(eve_means)) if has_eve else None,
        ci_halfwidth_b=_ci_halfwidth(bob_means),
        ci_halfwidth_e=_ci_halfwidth(eve_means) if has_eve else None,
        eavesdropped_fraction=float(np.mean(fractions)),
        sim_horizon=float(np.mean(horizons)),
        bob_deliveries=config.num_arrivals * config.num_replications,
        eve_deliveries=eve_total,
    )


def _write_event_trace(path: str | Path, rep: _Replication) -> None:
    """Dump one replication's events as CSV, sorted by event time.

    Columns: event_time, event_kind (arrival | bob_departure |
    eve_departure), packet_id, generation_time.
    """
    gen = rep.generation_times
    ids = np.arange(gen.size)
    times = np.concatenate((gen, rep.bob_departures, rep.eve_departures))
    kinds = (
        ["arrival"] * gen.size
        + ["bob_departure"] * rep.bob_departures.size
        + ["eve_departure"] * rep.eve_departures.size
    )
    packet_ids = np.concatenate((ids, ids, rep.captured_ids))
    gen_stamps = np.concatenate((gen, gen, gen[rep.captured_ids]))

    order = np.argsort(times, kind="stable")
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["event_time", "event_kind", "packet_id", "generation_time"])
        for i in order:
            writer.writerow(
                [repr(float(times[i])), kinds[i], int(packet_ids[i]),
                 repr(float(gen_stamps[i]))]
            )
