"""Command-line interface.

Subcommands: ``spectrum``, ``evolve``, ``sweep``, ``steady``,
``esd-oracle``, ``preset list``.  All read an INI config (see
:mod:`dimersim.config`) except ``esd-oracle`` and ``preset list``.

Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
3 I/O failure.  Outputs are deterministic: identical config and version
give byte-identical CSV/JSON regardless of thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from types import MappingProxyType

import numpy as np

from . import __version__
from .config import parse_config
from .entanglement import (EntanglementSeries, concurrence, concurrence_series,
                           esd_time_alpha, esd_time_family_a, scan_events)
from .errors import (ConfigError, IntegrationFailureError,
                     InvalidGeometryError, InvalidParameterError,
                     InvalidStateError, NonStationarityError,
                     NonUniqueSteadyStateError, NumericalFailureError,
                     UnknownPresetError)
from .propagation import analytic_rho_eq6, evolve
from .scenarios import FAMILIES, ScenarioPreset, preset, preset_names, run_sweep
from .stationary import find_peaks, spectrum_scan, steady_state

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

_SCHEMA_VERSION = 1
_EVENT_EPS = 1e-6


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # exit 1, not argparse's default 2
        raise _UsageError(message)


def _fmt(x):
    return repr(float(x))


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    _write_text(path, "\n".join(lines) + "\n")


def _write_json(path, payload):
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_config(args):
    if args.config is None:
        raise _UsageError("a config file is required")
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text, strict=not args.permissive)


def _tol(cfg, args):
    if args.tol is not None:
        return args.tol
    return cfg.grid.get("tol", 1e-9)


def _threads(args):
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("DIMER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise _UsageError(f"DIMER_THREADS must be an integer, got {env!r}") from None
    return 1


def _out_path(cfg, args, default):
    return args.output or cfg.output.get("path") or default


def _events_path(cfg, csv_path):
    configured = cfg.output.get("events_path")
    if configured:
        return configured
    stem, _ = os.path.splitext(csv_path)
    return stem + ".events.json"


def _plot_path(csv_path):
    stem, _ = os.path.splitext(csv_path)
    return stem + ".png"


def _event_payload(events):
    return [{"kind": ev.kind, "time_us": ev.time, "resolved": ev.resolved}
            for ev in events]


def cmd_spectrum(args):
    cfg = _load_config(args)
    params = cfg.params()
    g = cfg.grid
    start = g.get("detuning_start_mhz", -2500.0)
    stop = g.get("detuning_stop_mhz", 2500.0)
    step = g.get("detuning_step_mhz", 5.0)
    if not (step > 0.0 and stop > start):
        raise _UsageError("detuning grid must satisfy stop > start and step > 0")
    grid = np.arange(start, stop + 0.5 * step, step)
    curve = spectrum_scan(params, grid)
    path = _out_path(cfg, args, "spectrum.csv")
    rows = (( _fmt(curve.detuning_mhz[i]), _fmt(curve.signal[i]),
              _fmt(curve.p01[i]), _fmt(curve.p10[i]), _fmt(curve.p11[i]))
            for i in range(len(curve)))
    _write_csv(path, ("delta_plus_half_mhz", "signal", "p01", "p10", "p11"), rows)
    for loc, height in find_peaks(curve):
        print(f"peak location_mhz={loc:.3f} height={height:.6e}")
    if args.plot:
        from .plots import plot_spectrum
        plot_spectrum(curve, _plot_path(path))
    return EXIT_OK


def _evolve_setup(cfg):
    params = cfg.params()
    if cfg.family is None:
        raise _UsageError("this command needs an [initial_state] section or a preset")
    rho0 = FAMILIES[cfg.family][2](cfg.initial)
    pre = preset(cfg.preset_name) if cfg.preset_name else None
    t_final = cfg.grid.get("t_final_us", pre.horizon_us if pre else None)
    samples = cfg.grid.get("samples", pre.samples if pre else 400)
    if t_final is None:
        raise _UsageError("grid.t_final_us is required without a preset")
    if not (t_final > 0.0) or samples < 2:
        raise _UsageError("time grid must have t_final_us > 0 and samples >= 2")
    times = np.linspace(0.0, t_final, samples)
    return params, rho0, times


def cmd_evolve(args):
    cfg = _load_config(args)
    params, rho0, times = _evolve_setup(cfg)
    tol = _tol(cfg, args)
    traj = evolve(rho0, params, times, tol=tol)
    series = concurrence_series(traj)
    path = _out_path(cfg, args, "evolve.csv")
    s = traj.states
    rows = ((_fmt(traj.times[i]), _fmt(series.values[i]),
             _fmt(s[i, 0, 0].real), _fmt(s[i, 1, 1].real),
             _fmt(s[i, 2, 2].real), _fmt(s[i, 3, 3].real),
             _fmt(s[i, 0, 3].real), _fmt(s[i, 0, 3].imag),
             _fmt(s[i, 1, 2].real), _fmt(s[i, 1, 2].imag))
            for i in range(len(traj)))
    _write_csv(path, ("time_us", "concurrence", "p00", "p01", "p10", "p11",
                      "re_rho0011", "im_rho0011", "re_rho0110", "im_rho0110"),
               rows)
    sidecar = {
        "schema_version": _SCHEMA_VERSION,
        "command": "evolve",
        "preset": cfg.preset_name,
        "family": cfg.family,
        "initial": cfg.initial,
        "tolerance": tol,
        "method": traj.meta["method"],
        "event_eps": _EVENT_EPS,
        "events": _event_payload(scan_events(series, _EVENT_EPS)),
    }
    p = params
    if (cfg.family == "psi_zero_one" and p.v12 == 0.0 and p.gamma12 == 0.0
            and p.ell1 == 0.0 and p.ell2 == 0.0 and p.gamma1 == p.gamma2
            and p.gamma1 > 0.0):
        dev = 0.0
        for i, t in enumerate(traj.times):
            ref = analytic_rho_eq6(cfg.initial["alpha"], t, p.gamma1,
                                   p.delta_e, p.delta_plus)
            if cfg.initial.get("phi", 0.0) != 0.0:
                phase = np.exp(1j * cfg.initial["phi"])
                ref[0, 3] *= phase
                ref[3, 0] *= np.conj(phase)
            dev = max(dev, float(np.abs(traj.states[i] - ref).max()))
        sidecar["analytic_max_abs_deviation"] = dev
    _write_json(_events_path(cfg, path), sidecar)
    if args.plot:
        from .plots import plot_trajectory
        pops = {"p00": s[:, 0, 0].real, "p01": s[:, 1, 1].real,
                "p10": s[:, 2, 2].real, "p11": s[:, 3, 3].real}
        plot_trajectory(traj.times, series.values, pops, _plot_path(path))
    return EXIT_OK


def _sweep_preset(cfg):
    if cfg.preset_name is not None:
        return preset(cfg.preset_name)
    if cfg.family is None:
        raise _UsageError("sweep needs a preset or an [initial_state] section")
    if "axis" not in cfg.grid or "t_final_us" not in cfg.grid:
        raise _UsageError("sweep without a preset needs grid.axis and grid.t_final_us")
    return ScenarioPreset(
        name="custom", system_mhz=MappingProxyType(dict(cfg.system_mhz)),
        family=cfg.family, family_defaults=MappingProxyType(dict(cfg.initial)),
        sweep_param=cfg.grid["axis"], sweep_range=(0.0, 1.0),
        horizon_us=cfg.grid["t_final_us"], samples=cfg.grid.get("samples", 400),
        kind="trajectory", description="ad-hoc config sweep")


def cmd_sweep(args):
    if args.list_presets:
        for name in preset_names():
            print(name)
        return EXIT_OK
    cfg = _load_config(args)
    pre = _sweep_preset(cfg)
    g = cfg.grid
    axis = g.get("axis", pre.sweep_param)
    lo = g.get("axis_start", pre.sweep_range[0])
    hi = g.get("axis_stop", pre.sweep_range[1])
    n = g.get("axis_points", 51)
    if n < 1:
        raise _UsageError("axis_points must be >= 1")
    values = np.linspace(lo, hi, n)
    t_final = g.get("t_final_us", pre.horizon_us)
    samples = g.get("samples", pre.samples)
    if not (t_final > 0.0) or samples < 2:
        raise _UsageError("time grid must have t_final_us > 0 and samples >= 2")
    times = np.linspace(0.0, t_final, samples)
    tol = _tol(cfg, args)
    grid = run_sweep(pre, axis=axis, values=values, tol=tol, times=times,
                     threads=_threads(args))
    path = _out_path(cfg, args, "sweep.csv")
    rows = ((_fmt(grid.axis_values[i]), _fmt(grid.times[j]), _fmt(grid.values[i, j]))
            for i in range(values.size) for j in range(times.size))
    _write_csv(path, ("axis_value", "time_us", "concurrence"), rows)
    per_row = []
    for i in range(values.size):
        row_series = EntanglementSeries(times=grid.times, values=grid.values[i])
        per_row.append({
            "axis_value": float(grid.axis_values[i]),
            "events": _event_payload(scan_events(row_series, _EVENT_EPS)),
        })
    _write_json(_events_path(cfg, path), {
        "schema_version": _SCHEMA_VERSION,
        "command": "sweep",
        "preset": grid.preset_name,
        "axis": grid.axis_name,
        "tolerance": tol,
        "event_eps": _EVENT_EPS,
        "rows": per_row,
    })
    if args.plot:
        from .plots import plot_sweep
        plot_sweep(grid, _plot_path(path))
    return EXIT_OK


def cmd_steady(args):
    cfg = _load_config(args)
    params = cfg.params()
    rho = steady_state(params)
    c = concurrence(rho)
    signal = (rho[1, 1] + rho[2, 2] + 2.0 * rho[3, 3]).real
    print(f"p00={rho[0, 0].real:.10f} p01={rho[1, 1].real:.10f} "
          f"p10={rho[2, 2].real:.10f} p11={rho[3, 3].real:.10f}")
    print(f"signal={signal:.10f} concurrence={c:.10f}")
    path = args.output or cfg.output.get("path")
    if path:
        rows = ((str(i), str(j), _fmt(rho[i, j].real), _fmt(rho[i, j].imag))
                for i in range(4) for j in range(4))
        _write_csv(path, ("i", "j", "re", "im"), rows)
    return EXIT_OK


def cmd_esd_oracle(args):
    gamma = 2.0 * np.pi * args.gamma_mhz_over_2pi
    if gamma <= 0.0:
        raise _UsageError("--gamma-mhz-over-2pi must be positive")
    if args.values:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise _UsageError(f"bad --values list: {args.values!r}") from None
    else:
        values = list(np.linspace(args.start, args.stop, args.points))
    formula = esd_time_family_a if args.family == "a" else esd_time_alpha
    rows = []
    for v in values:
        t = formula(v, gamma)
        rows.append((_fmt(v), "" if t is None else _fmt(t)))
        shown = "none (asymptotic decay)" if t is None else f"{t * 1e3:.6f} ns"
        print(f"{args.family}={v:g}: death time {shown}")
    if args.output:
        _write_csv(args.output, ("value", "esd_time_us"), rows)
    return EXIT_OK


def cmd_preset(args):
    if args.action == "list":
        for name in preset_names():
            pre = preset(name)
            print(f"{name}: {pre.description}")
        return EXIT_OK
    raise _UsageError(f"unknown preset action {args.action!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="integration tolerance (overrides grid.tol)")
    common.add_argument("--threads", type=int, default=None,
                        help="sweep worker threads (overrides DIMER_THREADS)")
    common.add_argument("--output", default=None,
                        help="output path (overrides output.path)")
    common.add_argument("--plot", action="store_true",
                        help="also render a PNG figure next to the CSV")
    common.add_argument("--permissive", action="store_true",
                        help="ignore unknown config keys")

    parser = _ArgumentParser(prog="dimersim",
                             description="driven dissipative two-qubit dimer simulator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common],
                       help="steady-state fluorescence scan over laser detuning")
    p.add_argument("config", nargs="?")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("evolve", parents=[common],
                       help="single trajectory with concurrence and events")
    p.add_argument("config", nargs="?")
    p.set_defaults(fn=cmd_evolve)

    p = sub.add_parser("sweep", parents=[common],
                       help="concurrence grid over a parameter axis and time")
    p.add_argument("config", nargs="?")
    p.add_argument("--list-presets", action="store_true")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("steady", parents=[common],
                       help="steady state populations and concurrence")
    p.add_argument("config", nargs="?")
    p.set_defaults(fn=cmd_steady)

    p = sub.add_parser("esd-oracle", parents=[common],
                       help="closed-form disentanglement times")
    p.add_argument("--family", choices=("a", "alpha"), required=True)
    p.add_argument("--gamma-mhz-over-2pi", type=float, required=True)
    p.add_argument("--values", default=None, help="comma-separated parameter values")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--points", type=int, default=11)
    p.set_defaults(fn=cmd_esd_oracle)

    p = sub.add_parser("preset", parents=[common], help="preset registry")
    p.add_argument("action", choices=("list",))
    p.set_defaults(fn=cmd_preset)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except (_UsageError, ConfigError, UnknownPresetError, InvalidParameterError,
            InvalidStateError, InvalidGeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationFailureError, NumericalFailureError,
            NonUniqueSteadyStateError, NonStationarityError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
