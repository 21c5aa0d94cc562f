"""Battery charge and discharge model for beam-charged receivers.

Charging follows a quartic SOC-versus-minutes curve fitted per power
level (5, 10, 15 W). A receiver resuming charge from an arbitrary SOC is
placed on the curve by inverting it, then advanced by the slot length.
Discharging is stochastic: each slot the device occupies one of eight
usage states, each with an occupancy rate and a constant power draw.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

# Inversion brackets are precomputed on a fixed grid; 24 bisection steps
# inside a 0.1-minute bracket put the SOC error near 5e-11, comfortably
# inside the 1e-9 contract.
GRID_STEP_MINUTES = 0.1
BISECT_ITERATIONS = 24
_SEARCH_LIMIT_MINUTES = 1440.0


def _poly(coeffs: np.ndarray, t):
    # Horner evaluation; the simulation kernel inlines this exact
    # expression, so the operation order here is load-bearing.
    return (((coeffs[0] * t + coeffs[1]) * t + coeffs[2]) * t + coeffs[3]) * t + coeffs[4]


def _derivative(coeffs: np.ndarray) -> np.ndarray:
    return np.array([4.0 * coeffs[0], 3.0 * coeffs[1], 2.0 * coeffs[2], coeffs[3], 0.0])


def _bisect_zero(f: Callable[[float], float], lo: float, hi: float) -> float:
    """Bisection to float convergence; f must change sign on [lo, hi]."""
    negative_lo = f(lo) < 0.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        if (f(mid) < 0.0) == negative_lo:
            lo = mid
        else:
            hi = mid


def _find_minutes_to_full(coeffs: np.ndarray) -> float:
    """Time at which a charge curve is considered full.

    Walks the curve in 0.1-minute steps and returns the first crossing of
    SOC 1.0. A fitted quartic may saturate just below 1.0 instead; in
    that case the first stationary maximum is the full point (the curve
    is untrusted past its turnover).
    """
    deriv = _derivative(coeffs)
    steps = int(_SEARCH_LIMIT_MINUTES / GRID_STEP_MINUTES)
    for k in range(1, steps + 1):
        t = k * GRID_STEP_MINUTES
        if _poly(coeffs, t) >= 1.0:
            return _bisect_zero(lambda x: _poly(coeffs, x) - 1.0,
                                t - GRID_STEP_MINUTES, t)
        if _poly(deriv, t) <= 0.0:
            return _bisect_zero(lambda x: _poly(deriv, x),
                                t - GRID_STEP_MINUTES, t)
    raise ValueError("charge curve never approaches full within the search range")


class ChargeCurve:
    """Quartic SOC model for one charging power level.

    The polynomial maps minutes of uninterrupted charging from empty to
    an SOC fraction. It is trusted on [0, minutes_to_full] only; past
    that point the battery is treated as full.
    """

    def __init__(self, watts: int, coefficients: Sequence[float]) -> None:
        coeffs = np.asarray(coefficients, dtype=np.float64)
        if coeffs.shape != (5,):
            raise ValueError("expected five quartic coefficients, highest degree first")
        self.watts = int(watts)
        self.coefficients = coeffs
        self.minutes_to_full = _find_minutes_to_full(coeffs)

        # Monotone bracket grid for inversion.
        n = int(self.minutes_to_full / GRID_STEP_MINUTES) + 1
        grid_t = np.arange(n, dtype=np.float64) * GRID_STEP_MINUTES
        if grid_t[-1] < self.minutes_to_full:
            grid_t = np.append(grid_t, self.minutes_to_full)
        self._grid_t = grid_t
        self._grid_soc = _poly(coeffs, grid_t)
        self.soc_at_zero = float(self._grid_soc[0])
        self.soc_at_full = float(self._grid_soc[-1])

    def __repr__(self) -> str:
        return f"ChargeCurve({self.watts} W, full at {self.minutes_to_full:.2f} min)"

    def soc_at(self, minutes):
        """SOC after charging from empty for `minutes`, clamped to [0, 1]."""
        t = np.asarray(minutes, dtype=np.float64)
        if np.any(t < 0.0):
            raise ValueError("charging time must be nonnegative")
        soc = np.clip(_poly(self.coefficients, t), 0.0, 1.0)
        soc = np.where(t > self.minutes_to_full, 1.0, soc)
        return float(soc) if np.ndim(minutes) == 0 else soc

    def minutes_at(self, soc):
        """Invert the curve: charging minutes that produce `soc`.

        Bisection on the precomputed bracket grid. SOC at or below the
        curve's starting value maps to 0; SOC at or above the value at
        minutes_to_full maps to minutes_to_full.
        """
        s = np.asarray(soc, dtype=np.float64)
        if np.any(s < 0.0) or np.any(s > 1.0):
            raise ValueError("soc must lie in [0, 1]")
        idx = np.searchsorted(self._grid_soc, s, side="right")
        k = np.clip(idx - 1, 0, len(self._grid_t) - 2)
        lo = self._grid_t[k]
        hi = self._grid_t[k + 1]
        for _ in range(BISECT_ITERATIONS):
            mid = 0.5 * (lo + hi)
            below = _poly(self.coefficients, mid) < s
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        t = 0.5 * (lo + hi)
        t = np.where(s <= self.soc_at_zero, 0.0, t)
        t = np.where(s >= self.soc_at_full, self.minutes_to_full, t)
        return float(t) if np.ndim(soc) == 0 else t

    def advance(self, soc, minutes):
        """SOC after charging for `minutes` more, starting from `soc`."""
        dt = np.asarray(minutes, dtype=np.float64)
        if np.any(dt < 0.0):
            raise ValueError("advance time must be nonnegative")
        out = self.soc_at(np.asarray(self.minutes_at(soc)) + dt)
        out = np.maximum(out, soc)
        return float(out) if np.ndim(soc) == 0 and np.ndim(minutes) == 0 else out


# SOC-vs-minutes quartics for the three supported charging power levels,
# keyed by watts. Coefficients are highest degree first.
CHARGE_CURVES: dict[int, ChargeCurve] = {
    5: ChargeCurve(5, (-7.858e-10, 1.992e-07, -1.764e-05, 0.006813, 0.0)),
    10: ChargeCurve(10, (5.372e-09, -1.561e-06, 8.361e-05, 0.0113, 0.0)),
    15: ChargeCurve(15, (3.885e-09, -8.323e-07, -2.837e-05, 0.01689, 0.006894)),
}


def curve_soc(curve: ChargeCurve, minutes):
    """SOC reached after charging from empty for `minutes`."""
    return curve.soc_at(minutes)


def invert_curve(curve: ChargeCurve, soc):
    """Charging minutes from empty that produce `soc` on the curve."""
    return curve.minutes_at(soc)


def advance_soc(curve: ChargeCurve, soc, minutes):
    """Advance `soc` along the curve by `minutes` of charging."""
    return curve.advance(soc, minutes)


@dataclass(frozen=True)
class UsageState:
    """One device usage mode: occupancy rate and constant power draw."""

    label: str
    rate: float
    draw_watts: float


@dataclass(frozen=True)
class DischargeModel:
    """Stochastic per-slot discharge: usage states over a battery capacity."""

    states: tuple[UsageState, ...]
    battery_wh: float

    def __post_init__(self) -> None:
        total = sum(s.rate for s in self.states)
        if abs(total - 1.0) > 1e-9:
            raise ValueError("usage rates must sum to 1")
        if self.battery_wh <= 0.0:
            raise ValueError("battery capacity must be positive")
        if any(s.draw_watts < 0.0 for s in self.states):
            raise ValueError("power draws must be nonnegative")
        object.__setattr__(
            self, "cum_rates",
            np.cumsum([s.rate for s in self.states]).astype(np.float64))
        object.__setattr__(
            self, "draw_values",
            np.array([s.draw_watts for s in self.states], dtype=np.float64))

    def mean_draw_watts(self) -> float:
        return float(sum(s.rate * s.draw_watts for s in self.states))


# Measured smartphone usage profile: occupancy rates sum to exactly 1,
# draws are watts, capacity is watt-hours.
DEFAULT_DISCHARGE = DischargeModel(
    states=(
        UsageState("idle", 0.2527, 0.007),
        UsageState("social", 0.2198, 0.534),
        UsageState("music", 0.1978, 0.170),
        UsageState("videos", 0.1099, 0.458),
        UsageState("games", 0.1099, 0.812),
        UsageState("photos", 0.0439, 0.782),
        UsageState("call", 0.0330, 0.238),
        UsageState("web", 0.0330, 0.430),
    ),
    battery_wh=10.28,
)


def sample_discharge_draw(model: DischargeModel, rng: np.random.Generator) -> float:
    """Draw one usage state's power draw, weighted by occupancy rate."""
    u = rng.random()
    idx = min(int(np.searchsorted(model.cum_rates, u, side="right")),
              len(model.states) - 1)
    return model.states[idx].draw_watts


def discharge_fraction(draw_watts: float, dt_hours: float,
                       model: DischargeModel = DEFAULT_DISCHARGE) -> float:
    """Fraction of battery capacity consumed by `draw_watts` over `dt_hours`."""
    if draw_watts < 0.0:
        raise ValueError("draw must be nonnegative")
    return draw_watts * dt_hours / model.battery_wh
