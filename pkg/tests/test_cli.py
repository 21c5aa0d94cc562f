"""Command line behavior: files, formats, precedence, exit codes."""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

from rbcsim.cli import main

RUN_ARGS = ["run", "--receivers", "5", "--hours", "0.05", "--trials", "2",
            "--seed", "1"]
SUMMARY_HEADER = ("preset,algorithm,receivers,hours,trials,mean_avg_soc,"
                  "std_avg_soc,mean_earnings,std_earnings")
TRACE_HEADER = "trial,slot,receiver_id,plan_power,soc,charged,power_used_total"


def read_rows(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --- run -------------------------------------------------------------------

def test_run_writes_summary(tmp_path):
    out = tmp_path / "o"
    assert main(RUN_ARGS + ["--out", str(out)]) == 0
    text = (out / "summary.csv").read_text()
    assert text.splitlines()[0] == SUMMARY_HEADER
    rows = read_rows(out / "summary.csv")
    assert len(rows) == 1
    row = rows[0]
    assert row["preset"] == "run"
    assert row["algorithm"] == "hpc"
    assert row["receivers"] == "5"
    assert row["trials"] == "2"
    assert 0.0 <= float(row["mean_avg_soc"]) <= 1.0
    assert float(row["mean_earnings"]) >= 0.0


def test_run_trace_output(tmp_path):
    out = tmp_path / "o"
    assert main(RUN_ARGS + ["--out", str(out), "--trace"]) == 0
    lines = (out / "trace.csv").read_text().splitlines()
    assert lines[0] == TRACE_HEADER
    rows = read_rows(out / "trace.csv")
    # trials x slots x receivers
    assert len(rows) == 2 * 18 * 5
    for row in rows:
        assert row["plan_power"] in {"5", "10", "15"}
        assert row["charged"] in {"0", "1"}
        assert 0.0 <= float(row["soc"]) <= 1.0
        assert float(row["power_used_total"]) <= 50.0
    assert {row["trial"] for row in rows} == {"0", "1"}


def test_run_deterministic_bytes(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(RUN_ARGS + ["--out", str(a), "--trace"]) == 0
    assert main(RUN_ARGS + ["--out", str(b), "--trace"]) == 0
    assert (a / "summary.csv").read_bytes() == (b / "summary.csv").read_bytes()
    assert (a / "trace.csv").read_bytes() == (b / "trace.csv").read_bytes()


def test_run_algorithm_flag(tmp_path):
    out = tmp_path / "o"
    assert main(RUN_ARGS + ["--algorithm", "rrc", "--out", str(out)]) == 0
    assert read_rows(out / "summary.csv")[0]["algorithm"] == "rrc"


def test_run_rejects_bad_flags(tmp_path, capsys):
    assert main(["run", "--receivers", "0", "--hours", "1",
                 "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "receivers" in err
    assert main(["run", "--algorithm", "newest-first"]) == 2
    assert main(["run", "--receivers", "x"]) == 2
    assert main(["run", "--hours", "0"]) == 2
    assert main(["run", "--bogus-flag", "1"]) == 2
    assert main([]) == 2


def test_run_io_failure_exits_one(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = main(RUN_ARGS + ["--out", str(blocker / "nested")])
    assert code == 1
    assert "cannot write" in capsys.readouterr().err


# --- config files ----------------------------------------------------------

def test_config_file_applies_and_flags_win(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("# comment line\n"
                   "receivers = 4\n"
                   "hours = 0.05\n"
                   "trials = 2\n"
                   "algorithm = rrc\n"
                   "seed = 6\n")
    out1 = tmp_path / "o1"
    assert main(["run", "--config", str(cfg), "--out", str(out1)]) == 0
    row = read_rows(out1 / "summary.csv")[0]
    assert row["receivers"] == "4"
    assert row["algorithm"] == "rrc"
    assert row["trials"] == "2"

    out2 = tmp_path / "o2"
    assert main(["run", "--config", str(cfg), "--receivers", "6",
                 "--out", str(out2)]) == 0
    row = read_rows(out2 / "summary.csv")[0]
    assert row["receivers"] == "6"      # flag beats config
    assert row["algorithm"] == "rrc"    # config beats default


def test_config_file_errors(tmp_path, capsys):
    bad_key = tmp_path / "a.cfg"
    bad_key.write_text("wattage=5\n")
    assert main(["run", "--config", str(bad_key)]) == 2
    assert "wattage" in capsys.readouterr().err

    bad_line = tmp_path / "b.cfg"
    bad_line.write_text("receivers\n")
    assert main(["run", "--config", str(bad_line)]) == 2

    bad_value = tmp_path / "c.cfg"
    bad_value.write_text("receivers=five\n")
    assert main(["run", "--config", str(bad_value)]) == 2

    assert main(["run", "--config", str(tmp_path / "missing.cfg")]) == 2


# --- sweep -----------------------------------------------------------------

def test_sweep_small_grid(tmp_path):
    out = tmp_path / "o"
    assert main(["sweep", "soc_vs_n_fig7", "--receivers", "4,6",
                 "--hours", "0.05", "--trials", "2", "--seed", "0",
                 "--out", str(out)]) == 0
    csv_path = out / "soc_vs_n_fig7.csv"
    svg_path = out / "soc_vs_n_fig7.svg"
    assert csv_path.exists() and svg_path.exists()
    text = csv_path.read_text()
    assert text.splitlines()[0] == SUMMARY_HEADER
    rows = read_rows(csv_path)
    assert len(rows) == 4  # 2 algorithms x 2 receiver counts
    # both algorithms cover every grid point
    for n in ("4", "6"):
        algs = {r["algorithm"] for r in rows if r["receivers"] == n}
        assert algs == {"hpc", "rrc"}
    for row in rows:
        assert 0.0 <= float(row["mean_avg_soc"]) <= 1.0
        assert float(row["mean_earnings"]) >= 0.0
    assert svg_path.read_text().startswith("<svg")


def test_sweep_deterministic_bytes(tmp_path):
    args = ["sweep", "earnings_vs_n_fig8", "--receivers", "3,5", "--hours",
            "0.05", "--trials", "2", "--seed", "9"]
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    name = "earnings_vs_n_fig8"
    assert (a / f"{name}.csv").read_bytes() == (b / f"{name}.csv").read_bytes()
    assert (a / f"{name}.svg").read_bytes() == (b / f"{name}.svg").read_bytes()


def test_sweep_curve_preset(tmp_path):
    out = tmp_path / "o"
    assert main(["sweep", "curve_fig5", "--out", str(out)]) == 0
    rows = read_rows(out / "curve_fig5.csv")
    assert list(rows[0].keys()) == ["plan_watts", "minute", "soc"]
    by_plan = {}
    for row in rows:
        by_plan.setdefault(row["plan_watts"], []).append(float(row["soc"]))
    assert set(by_plan) == {"5", "10", "15"}
    # one-minute sampling over each curve's domain
    assert len(by_plan["5"]) == 191
    assert len(by_plan["10"]) == 140
    assert len(by_plan["15"]) == 127
    for socs in by_plan.values():
        assert all(b >= a for a, b in zip(socs, socs[1:]))
        assert 0.0 <= socs[0] and socs[-1] <= 1.0
    assert (out / "curve_fig5.svg").exists()


def test_sweep_unknown_preset(tmp_path):
    assert main(["sweep", "fig99", "--out", str(tmp_path)]) == 2


def test_sweep_rejects_bad_grid(tmp_path, capsys):
    assert main(["sweep", "soc_vs_n_fig7", "--receivers", "0,5",
                 "--out", str(tmp_path)]) == 2
    assert "receivers" in capsys.readouterr().err
    assert main(["sweep", "soc_vs_n_fig7", "--receivers", "a,b"]) == 2


def test_sweep_hours_config_grid(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("receivers=3,4\nhours=0.05\ntrials=1\n")
    out = tmp_path / "o"
    assert main(["sweep", "soc_vs_n_fig7", "--config", str(cfg),
                 "--out", str(out)]) == 0
    rows = read_rows(out / "soc_vs_n_fig7.csv")
    assert {r["receivers"] for r in rows} == {"3", "4"}
    assert {r["hours"] for r in rows} == {"0.05"}
