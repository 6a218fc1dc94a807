"""Named scenario presets and 1-D parameter/time concurrence sweeps.

Each preset bundles a laboratory parameter set (MHz quoting, converted on
demand), an initial-state family with default member, a sweep axis, and a
time horizon.  Horizons default to 10/Gamma for plain decay scenarios and
50/Gamma where a stationary value is the point; the tail check in
:func:`stationary_concurrence` validates that choice at run time.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .entanglement import concurrence, concurrence_series
from .errors import (InvalidParameterError, IntegrationFailureError,
                     NonStationarityError, UnknownPresetError)
from .model import (DimerParams, psi_alpha, psi_zero_one, product_state,
                    werner_state, x_family_a)
from .propagation import evolve
from .stationary import steady_state

#: initial-state families: name -> (parameter names, defaults, builder)
FAMILIES = {
    "psi_alpha": (("alpha", "phi"), {"alpha": 0.5, "phi": 0.0},
                  lambda v: psi_alpha(v["alpha"], v["phi"])),
    "psi_zero_one": (("alpha", "phi"), {"alpha": 0.5, "phi": 0.0},
                     lambda v: psi_zero_one(v["alpha"], v["phi"])),
    "product": (("gamma", "zeta", "phase1", "phase2"),
                {"gamma": 0.5, "zeta": 0.5, "phase1": 0.0, "phase2": 0.0},
                lambda v: product_state(v["gamma"], v["zeta"], v["phase1"], v["phase2"])),
    "x_family_a": (("a",), {"a": 0.0}, lambda v: x_family_a(v["a"])),
    "werner": (("p",), {"p": 1.0}, lambda v: werner_state(v["p"])),
}

#: sweepable DimerParams axes (frequency-quoted MHz) -> affected fields
PARAM_AXES = {
    "ell_mhz": ("ell1", "ell2"),
    "ell1_mhz": ("ell1",),
    "ell2_mhz": ("ell2",),
    "v12_mhz": ("v12",),
    "delta_e_mhz": ("delta_e",),
    "delta_plus_mhz": ("delta_plus",),
    "delta_minus_mhz": ("delta_minus",),
}


@dataclass(frozen=True)
class ScenarioPreset:
    """A named, reproducible simulation setup."""

    name: str
    system_mhz: MappingProxyType
    family: str | None
    family_defaults: MappingProxyType
    sweep_param: str | None
    sweep_range: tuple
    horizon_us: float
    samples: int
    kind: str  # "trajectory" | "spectrum"
    description: str
    spectrum_grid_mhz: tuple | None = None  # (start, stop, step) on Delta_+/2

    @property
    def params(self) -> DimerParams:
        return DimerParams.from_mhz(**dict(self.system_mhz))


@dataclass
class SweepGrid:
    """Concurrence over (axis value, time)."""

    axis_name: str
    axis_values: np.ndarray
    times: np.ndarray
    values: np.ndarray  # shape (len(axis_values), len(times))
    preset_name: str
    tol: float


def _system(gamma_over_2pi, gamma12_over_2pi, v12, dminus, dplus, de, ell1, ell2):
    return MappingProxyType({
        "gamma1_mhz_over_2pi": gamma_over_2pi,
        "gamma2_mhz_over_2pi": gamma_over_2pi,
        "gamma12_mhz_over_2pi": gamma12_over_2pi,
        "v12_mhz": v12,
        "delta_minus_mhz": dminus,
        "delta_plus_mhz": dplus,
        "delta_e_mhz": de,
        "ell1_mhz": ell1,
        "ell2_mhz": ell2,
    })


_T50 = 1.0 / (2.0 * np.pi * 50.0)   # 1/Gamma for the 2pi x 50 MHz rate, us
_T5 = 1.0 / (2.0 * np.pi * 5.0)
_T2 = 1.0 / (2.0 * np.pi * 2.0)

PRESETS: dict[str, ScenarioPreset] = {}


def _register(preset):
    PRESETS[preset.name] = preset


def _trajectory(name, system, family, defaults, sweep, rng, horizon, desc, samples=400):
    _register(ScenarioPreset(
        name=name, system_mhz=system, family=family,
        family_defaults=MappingProxyType(defaults), sweep_param=sweep,
        sweep_range=rng, horizon_us=horizon, samples=samples,
        kind="trajectory", description=desc))


def _spectrum(name, system, desc, grid=(-2500.0, 2500.0, 5.0)):
    _register(ScenarioPreset(
        name=name, system_mhz=system, family=None,
        family_defaults=MappingProxyType({}), sweep_param=None,
        sweep_range=(0.0, 0.0), horizon_us=0.0, samples=0,
        kind="spectrum", description=desc, spectrum_grid_mhz=grid))


# -- steady-state fluorescence scans ---------------------------------------
_spectrum("fig1a", _system(50.0, 9.0, 950.0, 2320.0, 0.0, -160.0, 200.0, 200.0),
          "detuned pair, strong dipolar coupling: three-peak fluorescence scan")
_spectrum("fig1b", _system(50.0, 9.0, 950.0, 0.0, 0.0, -160.0, 200.0, 200.0),
          "degenerate pair: two-peak fluorescence scan")
_spectrum("fig1cd", _system(9.0, 4.5, 950.0, 2320.0, 0.0, -160.0, 100.0, 100.0),
          "slow emitters, moderate drive: two-photon resonance zoom")

# -- driven entanglement control (strongly coupled pair) --------------------
_HETTICH = dict(gamma_over_2pi=50.0, gamma12_over_2pi=9.0, v12=950.0, dminus=2320.0)
_trajectory("fig2a", _system(**_HETTICH, dplus=0.0, de=0.0, ell1=500.0, ell2=500.0),
            "psi_alpha", {}, "alpha", (0.0, 1.0), 10.0 * _T50,
            "strong symmetric driving: disentanglement before 1/Gamma for all alpha")
_trajectory("fig2b", _system(**_HETTICH, dplus=0.0, de=0.0, ell1=300.0, ell2=500.0),
            "psi_alpha", {}, "alpha", (0.0, 1.0), 50.0 * _T50,
            "asymmetric driving: death followed by stationary entanglement")
_trajectory("fig2c", _system(**_HETTICH, dplus=2320.0, de=0.0, ell1=300.0, ell2=500.0),
            "psi_alpha", {}, "alpha", (0.0, 1.0), 50.0 * _T50,
            "laser resonant with qubit 2: partial death suppression")
_trajectory("fig2d", _system(**_HETTICH, dplus=-2320.0, de=0.0, ell1=300.0, ell2=500.0),
            "psi_alpha", {}, "alpha", (0.0, 1.0), 50.0 * _T50,
            "laser resonant with qubit 1: oscillatory decay, death suppressed")

# -- delayed entanglement birth from a separable preparation ----------------
_ESB = dict(gamma_over_2pi=50.0, gamma12_over_2pi=9.0, v12=950.0, dminus=2320.0,
            de=-160.0)
_trajectory("fig3a", _system(**_ESB, dplus=2320.0, ell1=100.0, ell2=100.0),
            "product", {"gamma": 0.0}, "zeta", (0.0, 1.0), 50.0 * _T50,
            "|1>(qubit-2 superposition) preparation, weak drive on qubit-2 resonance")
_trajectory("fig3b", _system(**_ESB, dplus=2320.0, ell1=300.0, ell2=500.0),
            "product", {"gamma": 0.0}, "zeta", (0.0, 1.0), 50.0 * _T50,
            "same preparation, stronger asymmetric drive")
_trajectory("fig3c", _system(**_ESB, dplus=-2320.0, ell1=100.0, ell2=100.0),
            "product", {"gamma": 0.0}, "zeta", (0.0, 1.0), 50.0 * _T50,
            "weak drive on qubit-1 resonance: earlier birth, less dead time")
_trajectory("fig3d", _system(**_ESB, dplus=-2320.0, ell1=300.0, ell2=500.0),
            "product", {"gamma": 0.0}, "zeta", (0.0, 1.0), 50.0 * _T50,
            "strong asymmetric drive on qubit-1 resonance: stationary C ~ 0.2")

# -- spontaneous emission only (uniform-coherence X family) -----------------
# The physical laser frequency is irrelevant here (ell = 0) and only fixes
# an unobservable frame phase, so delta_plus is stored as 0.
_trajectory("fig4-vacuum", _system(50.0, 0.0, 0.0, 2320.0, 0.0, 0.0, 0.0, 0.0),
            "x_family_a", {}, "a", (0.0, 1.0), 10.0 * _T50,
            "undriven, uncoupled decay of the X family: death for a < 2/3")

# -- product-state preparations, coupled pair --------------------------------
_PROD = dict(gamma_over_2pi=50.0, gamma12_over_2pi=9.0, v12=950.0, dminus=2320.0,
             dplus=0.0, de=-160.0, ell1=100.0, ell2=100.0)
_trajectory("fig5a", _system(**_PROD), "product", {"zeta": 0.0}, "gamma",
            (0.0, 1.0), 50.0 * _T50,
            "qubit-2 ground preparation: birth islands then common stationary value")
_trajectory("fig5b", _system(**_PROD), "product", {"zeta": 0.5}, "gamma",
            (0.0, 1.0), 50.0 * _T50,
            "balanced qubit-2 superposition: no birth delay")
_trajectory("fig5c", _system(**_PROD), "product", {"zeta": 1.0}, "gamma",
            (0.0, 1.0), 50.0 * _T50,
            "qubit-2 excited preparation: strongest oscillations near gamma = 0")

# -- product-state preparations, uncoupled pair (radiative shift only) -------
_PROD0 = dict(gamma_over_2pi=5.0, gamma12_over_2pi=0.0, v12=0.0, dminus=2320.0,
              dplus=2638.0, de=-160.0, ell1=200.0, ell2=200.0)
_trajectory("fig6a", _system(**_PROD0), "product", {"zeta": 0.0}, "gamma",
            (0.0, 1.0), 50.0 * _T5,
            "uncoupled pair, zeta = 0: entanglement from drive plus level shift alone")
_trajectory("fig6b", _system(**_PROD0), "product", {"zeta": 0.5}, "gamma",
            (0.0, 1.0), 50.0 * _T5,
            "uncoupled pair, balanced qubit-2 superposition")
_trajectory("fig6c", _system(**_PROD0), "product", {"zeta": 1.0}, "gamma",
            (0.0, 1.0), 50.0 * _T5,
            "uncoupled pair, zeta = 1")

# -- laser-strength sweeps ----------------------------------------------------
_trajectory("fig7a",
            _system(50.0, 9.0, 950.0, 2320.0, 0.0, -160.0, 100.0, 100.0),
            "product", {"gamma": 0.5, "zeta": 0.5}, "ell_mhz", (0.0, 1000.0),
            50.0 * _T50,
            "drive-strength sweep, strong dipolar coupling: optimal stationary point")
_trajectory("fig7b",
            _system(50.0, 9.0, 50.0, 2320.0, 0.0, -160.0, 100.0, 100.0),
            "product", {"gamma": 0.5, "zeta": 0.5}, "ell_mhz", (0.0, 1000.0),
            50.0 * _T50,
            "drive-strength sweep, weak coupling: shift-dominated dynamics")

# -- uncoupled pair, entangled preparations ----------------------------------
# Entanglement dies for good once the early collapse-revival episode is
# over in the four scenarios below, so they take the decay-class horizon.
_UNCOUPLED = dict(gamma12_over_2pi=0.0, v12=0.0, dminus=2320.0, dplus=2638.0,
                  de=-160.0)
_trajectory("fig8a", _system(gamma_over_2pi=5.0, ell1=200.0, ell2=200.0, **_UNCOUPLED),
            "psi_alpha", {}, "alpha", (0.0, 1.0), 10.0 * _T5,
            "uncoupled pair: death and collapse-revival as alpha varies",
            samples=800)
_trajectory("fig8b", _system(gamma_over_2pi=5.0, ell1=200.0, ell2=200.0, **_UNCOUPLED),
            "psi_alpha", {"alpha": 0.5}, "ell_mhz", (0.0, 500.0), 10.0 * _T5,
            "uncoupled pair at alpha = 1/2: decay, revival, then pure death vs drive",
            samples=800)
_trajectory("fig-collapse-revival",
            _system(gamma_over_2pi=2.0, ell1=200.0, ell2=200.0, **_UNCOUPLED),
            "psi_alpha", {"alpha": 0.5}, "alpha", (0.0, 1.0), 10.0 * _T2,
            "slow emitters, no coupling or collective decay: dark periods and revival",
            samples=2000)
_trajectory("fig-interplay",
            _system(gamma_over_2pi=2.0, ell1=200.0, ell2=200.0, **_UNCOUPLED),
            "psi_alpha", {"alpha": 0.5}, "ell_mhz", (0.0, 400.0), 10.0 * _T2,
            "drive against level shift: revival needs both, death needs only drive",
            samples=2000)


def preset(name):
    """Look up a registered scenario preset by name."""
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise UnknownPresetError(f"unknown preset {name!r}; available: {known}") from None


def preset_names():
    return sorted(PRESETS)


_MHZ_KEY = {
    "ell1": "ell1_mhz", "ell2": "ell2_mhz", "v12": "v12_mhz",
    "delta_e": "delta_e_mhz", "delta_plus": "delta_plus_mhz",
    "delta_minus": "delta_minus_mhz",
}


def resolve_point(pre, overrides=None):
    """Materialize (DimerParams, rho0) for a preset with axis overrides.

    ``overrides`` maps family parameter names and/or PARAM_AXES keys to
    values; unknown keys raise.
    """
    overrides = dict(overrides or {})
    system = dict(pre.system_mhz)
    family_values = {}
    if pre.family is not None:
        _, defaults, _ = FAMILIES[pre.family]
        family_values = {**defaults, **dict(pre.family_defaults)}
    for key, value in overrides.items():
        if pre.family is not None and key in FAMILIES[pre.family][0]:
            family_values[key] = value
        elif key in PARAM_AXES:
            for f in PARAM_AXES[key]:
                system[_MHZ_KEY[f]] = value
        else:
            raise InvalidParameterError(
                f"axis {key!r} is neither a {pre.family!r} family parameter "
                f"nor one of {sorted(PARAM_AXES)}")
    params = DimerParams.from_mhz(**system)
    rho0 = None
    if pre.family is not None:
        rho0 = FAMILIES[pre.family][2](family_values)
    return params, rho0


def default_times(pre):
    return np.linspace(0.0, pre.horizon_us, pre.samples)


def _sweep_point(pre, axis, value, times, tol):
    params, rho0 = resolve_point(pre, {axis: value})
    try:
        traj = evolve(rho0, params, times, tol=tol)
    except IntegrationFailureError as exc:
        raise IntegrationFailureError(
            f"at {axis} = {value}: {exc}", exc.time_us) from exc
    return concurrence_series(traj).values


def run_sweep(pre, axis=None, values=None, tol=1e-9, times=None, threads=1):
    """Concurrence grid over one axis (family parameter or MHz param) x time.

    Rows are axis values, columns sample times; each row is exactly the
    result of the single-trajectory API (evolve + concurrence_series), so
    the grid is independent of evaluation order and thread count.
    """
    if pre.kind != "trajectory":
        raise InvalidParameterError(f"preset {pre.name!r} is not a trajectory scenario")
    axis = axis if axis is not None else pre.sweep_param
    if axis is None:
        raise InvalidParameterError("preset has no default sweep axis; pass one")
    if values is None:
        lo, hi = pre.sweep_range
        values = np.linspace(lo, hi, 51)
    values = np.asarray(values, dtype=float)
    times = default_times(pre) if times is None else np.asarray(times, dtype=float)

    grid = np.empty((values.size, times.size))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = pool.map(lambda v: _sweep_point(pre, axis, v, times, tol), values)
            for i, row in enumerate(rows):
                grid[i] = row
    else:
        for i, v in enumerate(values):
            grid[i] = _sweep_point(pre, axis, v, times, tol)
    return SweepGrid(axis_name=axis, axis_values=values, times=times,
                     values=grid, preset_name=pre.name, tol=tol)


def stationary_concurrence(pre, axis_value=None, horizon_us=None, tol=1e-9):
    """Steady-state concurrence, cross-checked against the trajectory tail.

    The tail mean over the last 10% of the horizon must agree with the
    direct steady-state value within 0.01, otherwise the horizon is too
    short and :class:`NonStationarityError` is raised.
    """
    overrides = {}
    if axis_value is not None:
        if pre.sweep_param is None:
            raise InvalidParameterError(f"preset {pre.name!r} has no sweep axis")
        overrides[pre.sweep_param] = axis_value
    params, rho0 = resolve_point(pre, overrides)
    gbar = 0.5 * (params.gamma1 + params.gamma2)
    if gbar <= 0.0:
        raise InvalidParameterError("stationary check needs a positive decay rate")
    if horizon_us is None:
        horizon_us = max(pre.horizon_us, 50.0 / gbar)
    if horizon_us < 20.0 / gbar:
        raise InvalidParameterError(
            f"horizon {horizon_us:g} us is below 20/Gamma = {20.0 / gbar:g} us")
    c_ss = concurrence(steady_state(params))
    samples = max(400, pre.samples)
    traj = evolve(rho0, params, np.linspace(0.0, horizon_us, samples), tol=tol)
    series = concurrence_series(traj)
    tail = series.values[series.times >= 0.9 * horizon_us]
    tail_mean = float(tail.mean())
    if abs(tail_mean - c_ss) > 0.01:
        raise NonStationarityError(
            f"trajectory tail ({tail_mean:.4f}) and steady-state solve ({c_ss:.4f}) "
            f"disagree; extend the horizon")
    return c_ss
