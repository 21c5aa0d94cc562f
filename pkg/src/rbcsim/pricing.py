"""Charging plans and earnings accounting.

Receivers subscribe to one of three plans. A plan fixes the charging
power a receiver gets when selected, its scheduling priority weight, and
the hourly price it pays while being charged. Earnings of a simulation
follow from the per-plan ledger of accumulated charged hours.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PricingPlan:
    priority_level: int
    charge_watts: int
    price_per_hour: float


# The three offered plans; priority level rises with charging power.
PLANS: tuple[PricingPlan, ...] = (
    PricingPlan(priority_level=1, charge_watts=5, price_per_hour=1.0),
    PricingPlan(priority_level=2, charge_watts=10, price_per_hour=3.0),
    PricingPlan(priority_level=3, charge_watts=15, price_per_hour=5.0),
)

PLAN_WATTS = np.array([p.charge_watts for p in PLANS], dtype=np.float64)


def plan_by_level(level: int) -> PricingPlan:
    if not 1 <= level <= len(PLANS):
        raise ValueError(f"no plan with priority level {level}")
    return PLANS[level - 1]


def sample_plan(rng) -> PricingPlan:
    """Draw one of the plans uniformly."""
    return PLANS[int(rng.integers(0, len(PLANS)))]


def empty_ledger() -> np.ndarray:
    """Fresh charged-time ledger: hours per plan, indexed by level - 1."""
    return np.zeros(len(PLANS), dtype=np.float64)


def earnings(ledger) -> float:
    """Dollars earned for a ledger of per-plan charged hours."""
    hours = np.asarray(ledger, dtype=np.float64)
    if hours.shape != (len(PLANS),):
        raise ValueError(f"ledger must have {len(PLANS)} entries")
    if np.any(hours < 0.0):
        raise ValueError("charged hours cannot be negative")
    total = 0.0
    for plan, h in zip(PLANS, hours):
        total += h * plan.price_per_hour
    return total
