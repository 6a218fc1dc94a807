"""Simulation of a laser-driven, dipole-dipole coupled two-qubit dimer.

Born-Markov master-equation dynamics with individual and collective
spontaneous emission, steady-state fluorescence spectra, Wootters
concurrence trajectories, and detection plus closed-form prediction of
entanglement sudden death, sudden birth and collapse-revival behavior.
"""

__version__ = "0.1.0"

from .errors import (ConfigError, DimerError, IntegrationFailureError,
                     InvalidGeometryError, InvalidParameterError,
                     InvalidStateError, NonStationarityError,
                     NonUniqueSteadyStateError, NumericalFailureError,
                     UnknownPresetError)
from .model import (DimerParams, XStateSpec, bell_psi_plus, check_density_matrix,
                    product_state, psi_alpha, psi_zero_one, to_angular,
                    werner_state, x_family_a, x_state)
from .geometry import DipoleGeometry, coupling_general, coupling_near_field
from .generator import (build_hamiltonian, build_liouvillian, generator_action,
                        lindblad_dissipator, unvec, vec)
from .propagation import (Trajectory, analytic_rho_eq6, evolve, propagate_expm)
from .entanglement import (EntanglementSeries, EsdEvent, concurrence,
                           concurrence_charpoly, concurrence_series,
                           concurrence_x_form, detect_birth, detect_death,
                           esd_time_alpha, esd_time_family_a, scan_events,
                           spin_flip)
from .stationary import SpectrumCurve, find_peaks, spectrum_scan, steady_state
from .scenarios import (PRESETS, ScenarioPreset, SweepGrid, preset, preset_names,
                        resolve_point, run_sweep, stationary_concurrence)
from .config import RunConfig, parse_config, serialize_config

__all__ = [
    "ConfigError", "DimerError", "IntegrationFailureError",
    "InvalidGeometryError", "InvalidParameterError", "InvalidStateError",
    "NonStationarityError", "NonUniqueSteadyStateError",
    "NumericalFailureError", "UnknownPresetError",
    "DimerParams", "XStateSpec", "bell_psi_plus", "check_density_matrix",
    "product_state", "psi_alpha", "psi_zero_one", "to_angular",
    "werner_state", "x_family_a", "x_state",
    "DipoleGeometry", "coupling_general", "coupling_near_field",
    "build_hamiltonian", "build_liouvillian", "generator_action",
    "lindblad_dissipator", "unvec", "vec",
    "Trajectory", "analytic_rho_eq6", "evolve", "propagate_expm",
    "EntanglementSeries", "EsdEvent", "concurrence", "concurrence_charpoly",
    "concurrence_series", "concurrence_x_form", "detect_birth", "detect_death",
    "esd_time_alpha", "esd_time_family_a", "scan_events", "spin_flip",
    "SpectrumCurve", "find_peaks", "spectrum_scan", "steady_state",
    "PRESETS", "ScenarioPreset", "SweepGrid", "preset", "preset_names",
    "resolve_point", "run_sweep", "stationary_concurrence",
    "RunConfig", "parse_config", "serialize_config",
]
