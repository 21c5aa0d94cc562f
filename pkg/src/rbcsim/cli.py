"""Command line front end: single runs and preset sweeps.

Exit codes: 0 success, 1 I/O failure, 2 invalid flags, config, or
preset. Config precedence is built-in defaults, then the --config file,
then explicit flags.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .experiments import (CURVE_PRESET, PRESET_NAMES, PRESETS,
                          SUMMARY_HEADER, run_curve_preset, run_sweep)
from .pricing import PLAN_WATTS
from .simulation import (ConfigError, SimConfig, monte_carlo,
                         validate_config)

TRACE_HEADER = ("trial", "slot", "receiver_id", "plan_power", "soc",
                "charged", "power_used_total")

_DEFAULTS = {
    "receivers": 30,
    "hours": 2.0,
    "slot_seconds": 10.0,
    "transmit_watts": 100.0,
    "algorithm": "hpc",
    "trials": 100,
    "seed": 0,
}

# config file keys mirror the flag spellings
_CONFIG_CONVERTERS = {
    "receivers": int,
    "hours": float,
    "slot-seconds": float,
    "transmit-watts": float,
    "algorithm": str,
    "trials": int,
    "seed": int,
}


class _CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))

def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbcsim",
        description="Simulate priority-based power scheduling for "
                    "beam-charged receivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one configuration and write a "
                                     "summary CSV row")
    run.add_argument("--receivers", type=int, help="receiver count (default 30)")
    run.add_argument("--hours", type=float, help="charging horizon in hours (default 2)")
    run.add_argument("--slot-seconds", type=float, help="slot length (default 10)")
    run.add_argument("--transmit-watts", type=float, help="transmit power (default 100)")
    run.add_argument("--algorithm", choices=("hpc", "rrc"),
                     help="scheduling policy (default hpc)")
    run.add_argument("--trials", type=int, help="Monte Carlo trials (default 100)")
    run.add_argument("--seed", type=int, help="base seed (default 0)")
    run.add_argument("--out", default="out", help="output directory (default ./out)")
    run.add_argument("--config", help="key=value config file")
    run.add_argument("--trace", action="store_true",
                     help="also write a per-slot trace CSV")

    sweep = sub.add_parser("sweep", help="run a named experiment preset")
    sweep.add_argument("preset", choices=PRESET_NAMES)
    sweep.add_argument("--receivers", type=_int_list, metavar="N[,N...]",
                       help="override the receiver-count grid")
    sweep.add_argument("--hours", type=_float_list, metavar="H[,H...]",
                       help="override the horizon grid")
    sweep.add_argument("--slot-seconds", type=float)
    sweep.add_argument("--transmit-watts", type=float)
    sweep.add_argument("--trials", type=int)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--out", default="out", help="output directory (default ./out)")
    sweep.add_argument("--config", help="key=value config file")
    return parser


def _load_config_file(path: str, list_grids: bool) -> dict:
    """Parse a flat key=value file into typed simulation settings."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(2, f"cannot read config file: {exc}") from exc
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise _CliError(2, f"config line {lineno}: expected key=value")
        if key not in _CONFIG_CONVERTERS:
            raise _CliError(2, f"config line {lineno}: unknown key '{key}'")
        convert = _CONFIG_CONVERTERS[key]
        if list_grids and key == "receivers":
            convert = _int_list
        elif list_grids and key == "hours":
            convert = _float_list
        try:
            values[key.replace("-", "_")] = convert(value)
        except ValueError as exc:
            raise _CliError(2, f"config line {lineno}: bad value for "
                               f"'{key}': {value}") from exc
    return values


def _merge_settings(args: argparse.Namespace, list_grids: bool) -> dict:
    settings = dict(_DEFAULTS)
    if list_grids:
        settings["receivers"] = None  # None means the preset grid
        settings["hours"] = None
    if args.config:
        settings.update(_load_config_file(args.config, list_grids))
    for key in ("receivers", "hours", "slot_seconds", "transmit_watts",
                "algorithm", "trials", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _write_trace_csv(path: Path, traces) -> None:
    plan_watts = PLAN_WATTS.astype(np.int64)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for trial, trace in enumerate(traces):
            slots, n = trace.soc.shape
            for s in range(slots):
                power = trace.power_watts[s]
                for r in range(n):
                    writer.writerow((trial, s, r,
                                     plan_watts[trace.plan_idx[r]],
                                     trace.soc[s, r],
                                     int(trace.charged[s, r]), power))


def _cmd_run(args: argparse.Namespace) -> int:
    settings = _merge_settings(args, list_grids=False)
    cfg = SimConfig(receivers=settings["receivers"], hours=settings["hours"],
                    algorithm=settings["algorithm"],
                    slot_seconds=settings["slot_seconds"],
                    transmit_watts=settings["transmit_watts"],
                    trials=settings["trials"], seed=settings["seed"])
    try:
        validate_config(cfg)
    except ConfigError as exc:
        raise _CliError(2, str(exc)) from exc
    result = monte_carlo(cfg, keep_traces=args.trace)
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "summary.csv", "w", encoding="utf-8",
                  newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SUMMARY_HEADER)
            writer.writerow(("run", cfg.algorithm, cfg.receivers, cfg.hours,
                             cfg.trials, result.mean_avg_soc,
                             result.std_avg_soc, result.mean_earnings,
                             result.std_earnings))
        if args.trace:
            _write_trace_csv(out_dir / "trace.csv", result.traces)
    except OSError as exc:
        raise _CliError(1, f"cannot write output: {exc}") from exc
    print(f"wrote {out_dir / 'summary.csv'}")
    if args.trace:
        print(f"wrote {out_dir / 'trace.csv'}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    settings = _merge_settings(args, list_grids=True)
    if args.preset == CURVE_PRESET:
        try:
            paths = run_curve_preset(args.out)
        except OSError as exc:
            raise _CliError(1, f"cannot write output: {exc}") from exc
        print(f"wrote {paths['csv']}")
        print(f"wrote {paths['svg']}")
        return 0

    preset = PRESETS[args.preset]
    receivers = settings["receivers"]
    hours = settings["hours"]
    base_cfg = SimConfig(receivers=_DEFAULTS["receivers"],
                         hours=_DEFAULTS["hours"],
                         slot_seconds=settings["slot_seconds"],
                         transmit_watts=settings["transmit_watts"],
                         trials=settings["trials"], seed=settings["seed"])
    # validate every grid point before burning time on the sweep
    try:
        for algorithm in preset.algorithms:
            for h in hours or preset.hours:
                for n in receivers or preset.receivers:
                    validate_config(SimConfig(
                        receivers=n, hours=h, algorithm=algorithm,
                        slot_seconds=base_cfg.slot_seconds,
                        transmit_watts=base_cfg.transmit_watts,
                        trials=base_cfg.trials, seed=base_cfg.seed))
    except ConfigError as exc:
        raise _CliError(2, str(exc)) from exc
    try:
        paths = run_sweep(preset, base_cfg, args.out, receivers=receivers,
                          hours=hours)
    except OSError as exc:
        raise _CliError(1, f"cannot write output: {exc}") from exc
    print(f"wrote {paths['csv']}")
    print(f"wrote {paths['svg']}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except _CliError as exc:
        print(f"rbcsim: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
