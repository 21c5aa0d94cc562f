"""Simulator for priority-based power scheduling in resonant beam
charging networks.

One transmitter shares a fixed receiver-side power budget among many
battery-powered receivers. Each receiver subscribes to a charging plan
(power level, priority weight, hourly price); per 10-second slot a
policy picks who charges: HPC greedily serves the highest
(1 - SOC) * priority scores, RRC rotates a round-robin queue. Batteries
charge along fitted quartic SOC curves and discharge through a
stochastic usage model.
"""

from .battery import (BISECT_ITERATIONS, CHARGE_CURVES, DEFAULT_DISCHARGE,
                      ChargeCurve, DischargeModel, UsageState, advance_soc,
                      curve_soc, discharge_fraction, invert_curve,
                      sample_discharge_draw)
from .pricing import (PLAN_WATTS, PLANS, PricingPlan, earnings, empty_ledger,
                      plan_by_level, sample_plan)
from .scheduling import (AllocationResult, Receiver, allocate_hpc,
                         allocate_rrc, priority, refresh_full_flags)
from .simulation import (ConfigError, MonteCarloResult, SimConfig, SimResult,
                         SimState, SimTrace, available_power, init_population,
                         is_terminated, monte_carlo, run_sim, step,
                         validate_config)

__version__ = "0.1.0"

__all__ = [
    "BISECT_ITERATIONS", "CHARGE_CURVES", "DEFAULT_DISCHARGE", "ChargeCurve",
    "DischargeModel", "UsageState", "advance_soc", "curve_soc",
    "discharge_fraction", "invert_curve", "sample_discharge_draw",
    "PLAN_WATTS", "PLANS", "PricingPlan", "earnings", "empty_ledger",
    "plan_by_level", "sample_plan",
    "AllocationResult", "Receiver", "allocate_hpc", "allocate_rrc",
    "priority", "refresh_full_flags",
    "ConfigError", "MonteCarloResult", "SimConfig", "SimResult", "SimState",
    "SimTrace", "available_power", "init_population", "is_terminated",
    "monte_carlo", "run_sim", "step", "validate_config",
    "__version__",
]
