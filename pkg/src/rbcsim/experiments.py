"""Named experiment presets: parameter sweeps and the charge-curve table.

Each preset fixes a grid of receiver counts and/or horizons plus the
policies to compare, and renders one tidy CSV and one SVG chart. Grids
are overridable so small smoke sweeps stay cheap.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from .battery import CHARGE_CURVES
from .charts import write_line_chart
from .simulation import SimConfig, monte_carlo

RECEIVER_GRID = (5, 10, 15, 20, 25, 30, 35, 40, 45)
HOUR_GRID = (0.5, 1.0, 1.5, 2.0)

SUMMARY_HEADER = ("preset", "algorithm", "receivers", "hours", "trials",
                  "mean_avg_soc", "std_avg_soc", "mean_earnings",
                  "std_earnings")


@dataclass(frozen=True)
class SweepPreset:
    """A sweep over receiver counts and/or horizons.

    The chart puts x_axis on the x axis and the metric on the y axis;
    every combination of the remaining grid dimensions becomes a series.
    """

    name: str
    algorithms: tuple[str, ...]
    receivers: tuple[int, ...]
    hours: tuple[float, ...]
    x_axis: str      # "receivers" or "hours"
    metric: str      # "mean_avg_soc" or "mean_earnings"
    title: str


PRESETS: dict[str, SweepPreset] = {p.name: p for p in (
    SweepPreset("soc_vs_n_fig7", ("hpc", "rrc"), RECEIVER_GRID, (2.0,),
                "receivers", "mean_avg_soc",
                "Average SOC vs receiver count (2 h)"),
    SweepPreset("earnings_vs_n_fig8", ("hpc", "rrc"), RECEIVER_GRID, (2.0,),
                "receivers", "mean_earnings",
                "Earnings vs receiver count (2 h)"),
    SweepPreset("soc_vs_n_by_duration_fig9", ("hpc",), RECEIVER_GRID,
                HOUR_GRID, "receivers", "mean_avg_soc",
                "Average SOC vs receiver count by charging duration"),
    SweepPreset("soc_vs_duration_fig10", ("hpc",), RECEIVER_GRID, HOUR_GRID,
                "hours", "mean_avg_soc",
                "Average SOC vs charging duration by receiver count"),
    SweepPreset("earnings_vs_n_by_duration_fig10a", ("hpc",), RECEIVER_GRID,
                HOUR_GRID, "receivers", "mean_earnings",
                "Earnings vs receiver count by charging duration"),
    SweepPreset("earnings_vs_duration_fig11", ("hpc",), RECEIVER_GRID,
                HOUR_GRID, "hours", "mean_earnings",
                "Earnings vs charging duration by receiver count"),
)}

CURVE_PRESET = "curve_fig5"
PRESET_NAMES = (CURVE_PRESET,) + tuple(PRESETS)


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def run_sweep(preset: SweepPreset, base_cfg: SimConfig, out_dir,
              receivers: tuple[int, ...] | None = None,
              hours: tuple[float, ...] | None = None) -> dict[str, Path]:
    """Run one sweep preset and write its CSV and chart.

    receivers/hours override the preset grids. Returns the written
    paths. Rows are ordered algorithm, then hours, then receivers, so
    output is deterministic for a fixed seed.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    receiver_grid = tuple(receivers) if receivers else preset.receivers
    hour_grid = tuple(hours) if hours else preset.hours

    rows = []
    cells: dict[tuple[str, float, int], tuple[float, float]] = {}
    for algorithm in preset.algorithms:
        for h in hour_grid:
            for n in receiver_grid:
                cfg = replace(base_cfg, receivers=n, hours=h,
                              algorithm=algorithm)
                agg = monte_carlo(cfg)
                rows.append((preset.name, algorithm, n, h, cfg.trials,
                             agg.mean_avg_soc, agg.std_avg_soc,
                             agg.mean_earnings, agg.std_earnings))
                cells[(algorithm, h, n)] = (agg.mean_avg_soc,
                                            agg.mean_earnings)

    csv_path = out_dir / f"{preset.name}.csv"
    _write_csv(csv_path, SUMMARY_HEADER, rows)

    metric_slot = 0 if preset.metric == "mean_avg_soc" else 1
    series = []
    if preset.x_axis == "receivers":
        xs = [float(n) for n in receiver_grid]
        for algorithm in preset.algorithms:
            for h in hour_grid:
                parts = []
                if len(preset.algorithms) > 1:
                    parts.append(algorithm.upper())
                if len(hour_grid) > 1:
                    parts.append(f"{h:g} h")
                label = " ".join(parts) or algorithm.upper()
                ys = [cells[(algorithm, h, n)][metric_slot]
                      for n in receiver_grid]
                series.append((label, xs, ys))
    else:
        xs = list(hour_grid)
        for algorithm in preset.algorithms:
            for n in receiver_grid:
                parts = []
                if len(preset.algorithms) > 1:
                    parts.append(algorithm.upper())
                if len(receiver_grid) > 1:
                    parts.append(f"{n} receivers")
                label = " ".join(parts) or f"{n} receivers"
                ys = [cells[(algorithm, h, n)][metric_slot] for h in hour_grid]
                series.append((label, xs, ys))

    x_label = ("Receiver count" if preset.x_axis == "receivers"
               else "Charging duration (h)")
    y_label = ("Mean average SOC" if preset.metric == "mean_avg_soc"
               else "Mean earnings ($)")
    svg_path = out_dir / f"{preset.name}.svg"
    write_line_chart(svg_path, preset.title, x_label, y_label, series)
    return {"csv": csv_path, "svg": svg_path}


def run_curve_preset(out_dir) -> dict[str, Path]:
    """Tabulate and chart the three charge curves at one-minute steps."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    series = []
    for watts in sorted(CHARGE_CURVES):
        curve = CHARGE_CURVES[watts]
        minutes = list(range(int(curve.minutes_to_full) + 1))
        socs = [curve.soc_at(float(m)) for m in minutes]
        rows.extend((watts, m, s) for m, s in zip(minutes, socs))
        series.append((f"{watts} W", [float(m) for m in minutes], socs))
    csv_path = out_dir / f"{CURVE_PRESET}.csv"
    _write_csv(csv_path, ("plan_watts", "minute", "soc"), rows)
    svg_path = out_dir / f"{CURVE_PRESET}.svg"
    write_line_chart(svg_path, "Charge curves by plan power",
                     "Charging time (min)", "SOC", series)
    return {"csv": csv_path, "svg": svg_path}
