"""Discrete-time charging simulation engine.

A simulation owns a fixed population of receivers and advances in fixed
time slots. Each slot the configured policy allocates the receiver-side
power budget, charged receivers move along their plan's charge curve,
and every receiver loses charge to its sampled usage draw. Monte Carlo
aggregation runs independent trials on deterministically derived seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import pricing
from ._kernel import simulate_slots
from .battery import CHARGE_CURVES, DEFAULT_DISCHARGE
from .pricing import PLANS, empty_ledger, sample_plan
from .scheduling import Receiver


class ConfigError(ValueError):
    """Raised when a simulation configuration is invalid."""


@dataclass(frozen=True)
class SimConfig:
    receivers: int
    hours: float
    algorithm: str = "hpc"
    slot_seconds: float = 10.0
    transmit_watts: float = 100.0
    electric_to_laser_eff: float = 0.40
    transmission_eff: float = 1.00
    laser_to_electric_eff: float = 0.50
    trials: int = 100
    seed: int = 0


ALGORITHMS = ("hpc", "rrc")


def validate_config(cfg: SimConfig) -> None:
    """Raise ConfigError naming the offending field if cfg is invalid."""
    if not isinstance(cfg.receivers, int) or isinstance(cfg.receivers, bool):
        raise ConfigError("receivers must be an integer")
    if cfg.receivers < 1:
        raise ConfigError("receivers must be at least 1")
    if not math.isfinite(cfg.hours) or cfg.hours <= 0.0:
        raise ConfigError("hours must be finite and positive")
    if not math.isfinite(cfg.slot_seconds) or cfg.slot_seconds <= 0.0:
        raise ConfigError("slot-seconds must be finite and positive")
    if cfg.hours * 3600.0 < cfg.slot_seconds:
        raise ConfigError("hours must cover at least one slot")
    if not math.isfinite(cfg.transmit_watts) or cfg.transmit_watts <= 0.0:
        raise ConfigError("transmit-watts must be finite and positive")
    for name in ("electric_to_laser_eff", "transmission_eff", "laser_to_electric_eff"):
        value = getattr(cfg, name)
        if not math.isfinite(value) or not 0.0 < value <= 1.0:
            raise ConfigError(f"{name} must lie in (0, 1]")
    if cfg.algorithm not in ALGORITHMS:
        raise ConfigError(f"algorithm must be one of {ALGORITHMS}")
    if not isinstance(cfg.trials, int) or isinstance(cfg.trials, bool):
        raise ConfigError("trials must be an integer")
    if cfg.trials < 1:
        raise ConfigError("trials must be at least 1")
    if not isinstance(cfg.seed, int) or isinstance(cfg.seed, bool):
        raise ConfigError("seed must be an integer")
    if not 0 <= cfg.seed < 2**64:
        raise ConfigError("seed must fit in 64 bits")


def available_power(cfg: SimConfig) -> float:
    """Receiver-side charging budget after transmission and conversion."""
    return cfg.transmit_watts * cfg.transmission_eff * cfg.laser_to_electric_eff


def init_population(cfg: SimConfig, rng: np.random.Generator) -> list[Receiver]:
    """Create the receiver population in arrival order.

    Initial SOC is a uniform integer percent 0..100 stored as a
    fraction; plans are drawn uniformly. Receiver ids equal creation
    order.
    """
    receivers = []
    for i in range(cfg.receivers):
        soc_percent = int(rng.integers(0, 101))
        plan = sample_plan(rng)
        receivers.append(Receiver(id=i, soc=soc_percent / 100.0, plan=plan,
                                  arrival_index=i, full_flag=soc_percent == 100))
    return receivers


# Static per-plan curve tables handed to the kernel, index-aligned with
# PLANS (0 -> 5 W, 1 -> 10 W, 2 -> 15 W). Grids are padded to a common
# width; grid_len holds each curve's true grid size.
def _pack_curves():
    curves = [CHARGE_CURVES[p.charge_watts] for p in PLANS]
    width = max(len(c._grid_t) for c in curves)
    grid_t = np.zeros((len(curves), width), dtype=np.float64)
    grid_soc = np.zeros((len(curves), width), dtype=np.float64)
    grid_len = np.zeros(len(curves), dtype=np.int64)
    for k, c in enumerate(curves):
        m = len(c._grid_t)
        grid_t[k, :m] = c._grid_t
        grid_soc[k, :m] = c._grid_soc
        grid_t[k, m:] = c._grid_t[-1]
        grid_soc[k, m:] = c._grid_soc[-1]
        grid_len[k] = m
    return {
        "coeffs": np.stack([c.coefficients for c in curves]),
        "minutes_to_full": np.array([c.minutes_to_full for c in curves]),
        "soc_at_zero": np.array([c.soc_at_zero for c in curves]),
        "soc_at_full": np.array([c.soc_at_full for c in curves]),
        "grid_t": grid_t,
        "grid_soc": grid_soc,
        "grid_len": grid_len,
    }


_CURVES = _pack_curves()
_DRAW_WATTS = DEFAULT_DISCHARGE.draw_values
_CUM_RATES = DEFAULT_DISCHARGE.cum_rates


@dataclass
class SimState:
    """Mutable array view of a running simulation."""

    soc: np.ndarray            # (n,) fractions
    plan_idx: np.ndarray       # (n,) int64, PLANS index
    queue: np.ndarray          # (n,) int64, RRC access order
    ledger_hours: np.ndarray   # per-plan charged hours
    elapsed_seconds: float
    rng: np.random.Generator
    last_charged: np.ndarray | None = None
    last_power_watts: float = 0.0

    @classmethod
    def from_population(cls, population: Sequence[Receiver],
                        rng: np.random.Generator) -> "SimState":
        n = len(population)
        if sorted(r.id for r in population) != list(range(n)):
            raise ValueError("receiver ids must be 0..n-1")
        soc = np.zeros(n, dtype=np.float64)
        plan_idx = np.zeros(n, dtype=np.int64)
        arrival = np.zeros(n, dtype=np.int64)
        for r in population:
            soc[r.id] = r.soc
            plan_idx[r.id] = r.plan.priority_level - 1
            arrival[r.id] = r.arrival_index
        queue = np.argsort(arrival, kind="stable").astype(np.int64)
        return cls(soc=soc, plan_idx=plan_idx, queue=queue,
                   ledger_hours=empty_ledger(), elapsed_seconds=0.0, rng=rng)


def is_terminated(state: SimState, cfg: SimConfig) -> bool:
    if state.elapsed_seconds >= cfg.hours * 3600.0 - 1e-9:
        return True
    return bool(np.all(state.soc >= 1.0))


def _kernel_args(cfg: SimConfig):
    return (cfg.algorithm == "rrc", available_power(cfg), cfg.slot_seconds,
            pricing.PLAN_WATTS, _CURVES["coeffs"], _CURVES["minutes_to_full"],
            _CURVES["soc_at_zero"], _CURVES["soc_at_full"], _CURVES["grid_t"],
            _CURVES["grid_soc"], _CURVES["grid_len"], _DRAW_WATTS, _CUM_RATES,
            DEFAULT_DISCHARGE.battery_wh)


def step(state: SimState, cfg: SimConfig) -> SimState:
    """Advance one time slot, returning the new state.

    Slot order: sample each receiver's usage draw, recompute full flags
    and priorities, allocate the budget, advance charged receivers along
    their curves, apply every receiver's discharge (clamped at 0), then
    grow the ledger and elapsed time. The returned state shares the rng
    (its stream advances by one slot of draws).
    """
    validate_config(cfg)
    if len(state.soc) != cfg.receivers:
        raise ValueError("state population does not match cfg.receivers")
    if is_terminated(state, cfg):
        raise ValueError("simulation already terminated")
    n = len(state.soc)
    soc = state.soc.copy()
    queue = state.queue.copy()
    ledger = state.ledger_hours.copy()
    uniforms = state.rng.random((1, n))
    trace_soc = np.zeros((1, n), dtype=np.float64)
    trace_charged = np.zeros((1, n), dtype=np.uint8)
    trace_power = np.zeros(1, dtype=np.float64)
    simulate_slots(soc, state.plan_idx, queue, ledger, uniforms,
                   *_kernel_args(cfg), True, trace_soc, trace_charged,
                   trace_power)
    return SimState(soc=soc, plan_idx=state.plan_idx, queue=queue,
                    ledger_hours=ledger,
                    elapsed_seconds=state.elapsed_seconds + cfg.slot_seconds,
                    rng=state.rng,
                    last_charged=np.flatnonzero(trace_charged[0]).astype(np.int64),
                    last_power_watts=float(trace_power[0]))


@dataclass(frozen=True)
class SimTrace:
    """Per-slot records: end-of-slot SOC, charged flags, power used."""

    soc: np.ndarray          # (slots, n)
    charged: np.ndarray      # (slots, n) bool
    power_watts: np.ndarray  # (slots,)
    plan_idx: np.ndarray     # (n,)


@dataclass(frozen=True)
class SimResult:
    final_soc: np.ndarray
    avg_soc: float
    earnings: float
    ledger_hours: np.ndarray
    slots_run: int
    terminated_reason: str
    trace: SimTrace | None


def run_sim(cfg: SimConfig, record_trace: bool = True) -> SimResult:
    """Run one simulation to its horizon (or until every battery is full)."""
    validate_config(cfg)
    rng = np.random.default_rng(cfg.seed)
    population = init_population(cfg, rng)
    state = SimState.from_population(population, rng)
    n = cfg.receivers
    max_slots = int(math.ceil(cfg.hours * 3600.0 / cfg.slot_seconds - 1e-9))
    uniforms = rng.random((max_slots, n))
    if record_trace:
        trace_soc = np.zeros((max_slots, n), dtype=np.float64)
        trace_charged = np.zeros((max_slots, n), dtype=np.uint8)
        trace_power = np.zeros(max_slots, dtype=np.float64)
    else:
        trace_soc = np.zeros((1, 1), dtype=np.float64)
        trace_charged = np.zeros((1, 1), dtype=np.uint8)
        trace_power = np.zeros(1, dtype=np.float64)
    slots_run, reason_code = simulate_slots(
        state.soc, state.plan_idx, state.queue, state.ledger_hours, uniforms,
        *_kernel_args(cfg), record_trace, trace_soc, trace_charged,
        trace_power)
    trace = None
    if record_trace:
        trace = SimTrace(soc=trace_soc[:slots_run],
                         charged=trace_charged[:slots_run].astype(bool),
                         power_watts=trace_power[:slots_run],
                         plan_idx=state.plan_idx)
    return SimResult(final_soc=state.soc,
                     avg_soc=float(np.mean(state.soc)),
                     earnings=pricing.earnings(state.ledger_hours),
                     ledger_hours=state.ledger_hours,
                     slots_run=int(slots_run),
                     terminated_reason="all_full" if reason_code == 1 else "horizon",
                     trace=trace)


@dataclass(frozen=True)
class MonteCarloResult:
    avg_soc_per_trial: np.ndarray
    earnings_per_trial: np.ndarray
    mean_avg_soc: float
    std_avg_soc: float
    mean_earnings: float
    std_earnings: float
    traces: list[SimTrace] | None


def monte_carlo(cfg: SimConfig, keep_traces: bool = False) -> MonteCarloResult:
    """Aggregate cfg.trials independent runs on seeds cfg.seed + index.

    Returns the mean and sample standard deviation of avg_soc and
    earnings (std is 0 for a single trial). Trials run and reduce in
    index order, so aggregates are bit-stable across hosts.
    """
    validate_config(cfg)
    avg_soc = np.zeros(cfg.trials, dtype=np.float64)
    earned = np.zeros(cfg.trials, dtype=np.float64)
    traces: list[SimTrace] | None = [] if keep_traces else None
    for i in range(cfg.trials):
        trial_cfg = replace(cfg, seed=(cfg.seed + i) % 2**64, trials=1)
        result = run_sim(trial_cfg, record_trace=keep_traces)
        avg_soc[i] = result.avg_soc
        earned[i] = result.earnings
        if traces is not None:
            traces.append(result.trace)
    std_soc = float(np.std(avg_soc, ddof=1)) if cfg.trials > 1 else 0.0
    std_earn = float(np.std(earned, ddof=1)) if cfg.trials > 1 else 0.0
    return MonteCarloResult(avg_soc_per_trial=avg_soc,
                            earnings_per_trial=earned,
                            mean_avg_soc=float(np.mean(avg_soc)),
                            std_avg_soc=std_soc,
                            mean_earnings=float(np.mean(earned)),
                            std_earnings=std_earn,
                            traces=traces)
