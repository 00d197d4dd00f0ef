"""Command-line front end: run scenarios to CSV, cross-validate the algebra.

Exit codes: 0 success, 1 usage problem, 2 run aborted on a singular
configuration, 3 validation sweep over threshold.

CSV output is deterministic byte for byte for a given configuration: fixed
column order, every float at 17 significant digits, no locale involvement.
Plot emission writes a gnuplot script next to the CSV, never image files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import validation
from .dynamics import State
from .energetics import Params, center_position
from .kinematics import euler_rotation
from .simulator import (
    PRESET_NAMES,
    ScenarioConfig,
    Trajectory,
    diagnostics_summary,
    integrate,
    scenario_preset,
)

CSV_COLUMNS = (
    "t",
    "c1",
    "c2",
    "c3",
    "phi",
    "theta",
    "psi",
    "dphi",
    "dtheta",
    "dpsi",
    "energy",
    "residual",
)

# Keep every step internally, write every k-th row.
EMIT_EVERY = 10

CONFIG_KEYS = ("m", "g", "r", "x0", "t_end", "dt")


class UsageError(Exception):
    """Bad invocation or malformed configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Validated description of one CLI invocation."""

    mode: str
    scenario: ScenarioConfig | None = None
    out: str | None = None
    emit_plot: bool = False
    samples: int = 1000
    seed: int = 42
    params: Params = Params()


def _build_parser() -> _Parser:
    parser = _Parser(prog="rollingdisk", description="Rolling-disk dynamics simulator")
    sub = parser.add_subparsers(dest="mode", metavar="{simulate,validate}")

    sim = sub.add_parser("simulate", help="integrate a scenario and write a CSV")
    sim.add_argument("--scenario", choices=PRESET_NAMES, help="named preset")
    sim.add_argument("--config", metavar="FILE", help="JSON run description")
    sim.add_argument("--out", metavar="FILE", help="CSV path (default <scenario>.csv)")
    sim.add_argument("--dt", type=float, help="override step size [s]")
    sim.add_argument("--t-end", dest="t_end", type=float, help="override horizon [s]")
    sim.add_argument(
        "--emit-plot",
        action="store_true",
        help="also write a gnuplot script for the top-view path",
    )
    sim.add_argument("--m", type=float, help="override mass [kg]")
    sim.add_argument("--g", type=float, help="override gravity [m/s^2]")
    sim.add_argument("--r", type=float, help="override radius [m]")
    sim.add_argument(
        "--x0",
        type=float,
        nargs=8,
        metavar=("C1", "C2", "PHI", "THETA", "PSI", "DPHI", "DTHETA", "DPSI"),
        help="override the initial state",
    )

    val = sub.add_parser("validate", help="cross-check closed forms on random states")
    val.add_argument("--samples", type=int, default=1000, help="number of random states")
    val.add_argument("--seed", type=int, default=42, help="generator seed")
    val.add_argument("--m", type=float, help="override mass [kg]")
    val.add_argument("--g", type=float, help="override gravity [m/s^2]")
    val.add_argument("--r", type=float, help="override radius [m]")
    return parser


def _load_config_file(path: str) -> ScenarioConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as err:
        raise UsageError(f"cannot read config file {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise UsageError(f"config file {path} is not valid JSON: {err}") from err
    if not isinstance(raw, dict):
        raise UsageError(f"config file {path} must hold a single object")
    for key in CONFIG_KEYS:
        if key not in raw:
            raise UsageError(f"config file {path} is missing key {key!r}")
    for key in raw:
        if key not in CONFIG_KEYS:
            raise UsageError(f"config file {path} has unknown key {key!r}")
    x0 = raw["x0"]
    if not (isinstance(x0, list) and len(x0) == 8):
        raise UsageError("config key 'x0' must be a list of 8 numbers")
    try:
        params = Params(m=float(raw["m"]), g=float(raw["g"]), r=float(raw["r"]))
        state = State.from_iterable(x0)
        return ScenarioConfig(
            name=Path(path).stem,
            params=params,
            x0=state,
            t_end=float(raw["t_end"]),
            dt=float(raw["dt"]),
        )
    except (TypeError, ValueError) as err:
        raise UsageError(f"config file {path}: {err}") from err


def parse_args(argv) -> RunConfig:
    """Turn argv into a validated RunConfig or raise UsageError."""
    ns = _build_parser().parse_args(argv)
    if ns.mode is None:
        raise UsageError("a subcommand is required: simulate or validate")

    if ns.mode == "validate":
        if ns.samples < 1:
            raise UsageError("--samples must be at least 1")
        params = Params()
        overrides = {k: v for k in ("m", "g", "r") if (v := getattr(ns, k)) is not None}
        if overrides:
            try:
                params = replace(params, **overrides)
            except ValueError as err:
                raise UsageError(str(err)) from err
        return RunConfig(mode="validate", samples=ns.samples, seed=ns.seed, params=params)

    if (ns.scenario is None) == (ns.config is None):
        raise UsageError("simulate needs exactly one of --scenario or --config")
    scenario = scenario_preset(ns.scenario) if ns.scenario else _load_config_file(ns.config)

    try:
        overrides = {k: v for k in ("m", "g", "r") if (v := getattr(ns, k)) is not None}
        if overrides:
            scenario = replace(scenario, params=replace(scenario.params, **overrides))
        if ns.x0 is not None:
            if not all(math.isfinite(v) for v in ns.x0):
                raise UsageError("--x0 components must be finite")
            scenario = replace(scenario, x0=State.from_iterable(ns.x0))
        if ns.dt is not None:
            scenario = replace(scenario, dt=ns.dt)
        if ns.t_end is not None:
            scenario = replace(scenario, t_end=ns.t_end)
    except ValueError as err:
        raise UsageError(str(err)) from err

    out = ns.out if ns.out is not None else f"{scenario.name}.csv"
    return RunConfig(
        mode="simulate",
        scenario=scenario,
        out=out,
        emit_plot=ns.emit_plot,
        params=scenario.params,
    )


def _emitted_indices(n: int):
    idx = list(range(0, n, EMIT_EVERY))
    if idx[-1] != n - 1:
        idx.append(n - 1)
    return idx


def write_csv(path: str, traj: Trajectory) -> int:
    """Write the thinned trajectory; returns the number of data rows."""
    r = traj.params.r
    lines = [",".join(CSV_COLUMNS)]
    indices = _emitted_indices(len(traj.samples))
    for i in indices:
        s = traj.samples[i]
        x = s.state
        values = (
            s.t,
            x.c1,
            x.c2,
            r * math.cos(x.theta),
            x.phi,
            x.theta,
            x.psi,
            x.dphi,
            x.dtheta,
            x.dpsi,
            s.energy,
            s.residual,
        )
        lines.append(",".join(format(v, ".17g") for v in values))
    Path(path).write_text("\n".join(lines) + "\n")
    return len(indices)


def _disk_outline(x0: State, p: Params, n_points: int = 64):
    """Top-view projection of the rim at the initial state."""
    q = x0.coords()
    center = center_position(q, p)
    rot = euler_rotation(q.angles())
    points = []
    for k in range(n_points + 1):
        u = 2.0 * math.pi * k / n_points
        rim_body = (0.0, p.r * math.cos(u), p.r * math.sin(u))
        wx = center[0] + rot[0, 1] * rim_body[1] + rot[0, 2] * rim_body[2]
        wy = center[1] + rot[1, 1] * rim_body[1] + rot[1, 2] * rim_body[2]
        points.append((wx, wy))
    return points

def write_plot_script(path: str, csv_name: str, traj: Trajectory) -> None:
    """Write a gnuplot script: center path from the CSV, rim outline inline."""
    outline = _disk_outline(traj.samples[0].state, traj.params)
    outline_block = "\n".join(f"{x:.6f},{y:.6f}" for x, y in outline)
    script = (
        "# Top view of the rolling-disk center path with the disk outline at t=0.\n"
        f"# Render with: gnuplot -persist {Path(path).name}\n"
        "set datafile separator ','\n"
        "set size ratio -1\n"
        "set xlabel 'c1 [m]'\n"
        "set ylabel 'c2 [m]'\n"
        "set grid\n"
        "$outline << EOD\n"
        f"{outline_block}\n"
        "EOD\n"
        f"plot '{csv_name}' using 2:3 with lines lw 2 lc rgb '#c0392b' title 'center path', \\\n"
        "     $outline using 1:2 with lines lw 2 lc rgb '#2980b9' title 'disk at t=0'\n"
    )
    Path(path).write_text(script)


def run_simulate(cfg: RunConfig) -> int:
    """Integrate, write artifacts, report; exit 2 on a singular abort."""
    traj = integrate(cfg.scenario)
    n_rows = write_csv(cfg.out, traj)
    summary = diagnostics_summary(traj)
    wrote = f"wrote {cfg.out} ({n_rows} rows)"
    if cfg.emit_plot:
        plot_path = str(Path(cfg.out).with_suffix(".gp"))
        write_plot_script(plot_path, Path(cfg.out).name, traj)
        wrote += f" and {plot_path}"
    print(
        f"scenario {summary.scenario}: {summary.n_samples} samples to "
        f"t={summary.t_final:g} s, dt={traj.dt:g}, {summary.integrator}"
    )
    print(
        f"  energy drift max {summary.max_energy_drift:.3e} "
        f"(mean {summary.mean_energy_drift:.3e}), "
        f"contact residual max {summary.max_residual:.3e}"
    )
    fs = summary.final_state
    print(
        f"  min |cos theta| {summary.min_abs_cos_theta:.6f}, "
        f"final (c1, c2) = ({fs.c1:.6f}, {fs.c2:.6f})"
    )
    print(wrote)
    if traj.failed:
        print(
            f"run aborted: singular configuration at t={traj.failure_time:g} s; "
            "partial trajectory written",
            file=sys.stderr,
        )
        return 2
    return 0


def run_validate(cfg: RunConfig) -> int:
    """Random-state cross-check sweep; exit 3 when a threshold is exceeded."""
    report = validation.validation_sweep(cfg.params, cfg.samples, cfg.seed)
    print(f"validate: {report.n_samples} samples, seed {report.seed}")
    print(
        f"  closed form vs linear solve: max rel err {report.max_err_solve:.3e} "
        f"(threshold {validation.SOLVE_THRESHOLD:g})"
    )
    print(
        f"  closed form vs fd rebuild:   max rel err {report.max_err_oracle:.3e} "
        f"(threshold {validation.ORACLE_THRESHOLD:g})"
    )
    if report.passed:
        print("  PASS")
        return 0
    if report.max_err_solve >= validation.SOLVE_THRESHOLD:
        q, v = report.worst_solve
        print(f"  FAIL vs linear solve at q={q}, v={v}", file=sys.stderr)
    if report.max_err_oracle >= validation.ORACLE_THRESHOLD:
        q, v = report.worst_oracle
        print(f"  FAIL vs fd rebuild at q={q}, v={v}", file=sys.stderr)
    return 3


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv if argv is not None else sys.argv[1:])
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    if cfg.mode == "simulate":
        return run_simulate(cfg)
    return run_validate(cfg)


def entry() -> None:
    sys.exit(main())
