"""Steady state of the driven dimer and fluorescence spectra.

The unique stationary density matrix solves L_v vec(rho) = 0 with unit
trace.  One scalar row of the singular system is replaced by the trace
constraint and the result LU-factored; a stacked least-squares solve
backs up ill-conditioned cases.  The fluorescence observable is the
excited-manifold combination p01 + p10 + 2 p11 scanned against the laser
detuning axis Delta_+/2 (MHz).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (DimerError, InvalidParameterError, NonUniqueSteadyStateError,
                     NumericalFailureError)
from .generator import build_liouvillian, unvec, vec
from .model import to_angular

_RESIDUAL_TOL = 1e-10
_KERNEL_RTOL = 1e-8
_TRACE_IDX = (0, 5, 10, 15)  # diagonal positions in the column-stacked vector


@dataclass
class SpectrumCurve:
    """Steady-state populations and fluorescence signal over a detuning grid."""

    detuning_mhz: np.ndarray  # Delta_+/2 axis
    signal: np.ndarray        # p01 + p10 + 2 p11
    p01: np.ndarray
    p10: np.ndarray
    p11: np.ndarray

    def __len__(self):
        return len(self.detuning_mhz)


def _solve_with_trace_row(lv):
    weight = max(np.abs(lv).max(), 1.0)
    a = lv.copy()
    a[0, :] = 0.0
    a[0, list(_TRACE_IDX)] = weight
    b = np.zeros(16, dtype=complex)
    b[0] = weight
    return np.linalg.solve(a, b)


def _lstsq_fallback(lv):
    a = np.vstack([lv, np.zeros((1, 16), dtype=complex)])
    a[16, list(_TRACE_IDX)] = 1.0
    b = np.zeros(17, dtype=complex)
    b[16] = 1.0
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    return x


def steady_state(params):
    """Unique stationary density matrix of the full generator.

    Raises
    ------
    NonUniqueSteadyStateError
        If the second-smallest singular value of L_v falls below
        1e-8 * ||L_v||, signalling a (near-)degenerate kernel.
    NumericalFailureError
        If neither the direct nor the least-squares solve reaches the
        residual contract ||L_v vec(rho)||_inf <= 1e-10.
    """
    lv = build_liouvillian(params)
    svals = np.linalg.svd(lv, compute_uv=False)
    if svals[0] == 0.0 or svals[-2] < _KERNEL_RTOL * svals[0]:
        raise NonUniqueSteadyStateError(
            f"generator kernel is not one-dimensional "
            f"(singular values {svals[-2]:.3e}, {svals[-1]:.3e} of scale {svals[0]:.3e})")

    def _finish(x):
        rho = unvec(x)
        rho = 0.5 * (rho + rho.conj().T)
        rho = rho / rho.trace().real
        return rho, np.abs(lv @ vec(rho)).max()

    try:
        rho, residual = _finish(_solve_with_trace_row(lv))
    except np.linalg.LinAlgError:
        residual = np.inf
        rho = None
    if residual > _RESIDUAL_TOL:
        rho, residual = _finish(_lstsq_fallback(lv))
        if residual > _RESIDUAL_TOL:
            raise NumericalFailureError(
                f"steady-state residual {residual:.3e} exceeds {_RESIDUAL_TOL:g}")
    return rho


def spectrum_scan(params_base, detuning_half_mhz):
    """Steady-state scan over the laser detuning axis Delta_+/2 (MHz).

    Each grid point overrides ``delta_plus`` (the full sum detuning is
    twice the axis value) and solves for the steady state; errors from
    the solver are re-raised annotated with the failing grid point.
    """
    grid = np.asarray(detuning_half_mhz, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidParameterError("detuning grid must be a non-empty 1-d array")
    if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
        raise InvalidParameterError("detuning grid must be strictly increasing")
    p01 = np.empty(grid.size)
    p10 = np.empty(grid.size)
    p11 = np.empty(grid.size)
    for i, half in enumerate(grid):
        p = replace(params_base, delta_plus=to_angular(2.0 * half))
        try:
            rho = steady_state(p)
        except DimerError as exc:
            raise type(exc)(f"at Delta_+/2 = {half} MHz: {exc}") from exc
        p01[i] = rho[1, 1].real
        p10[i] = rho[2, 2].real
        p11[i] = rho[3, 3].real
    return SpectrumCurve(detuning_mhz=grid, signal=p01 + p10 + 2.0 * p11,
                         p01=p01, p10=p10, p11=p11)


def find_peaks(curve):
    """Strict local maxima of the fluorescence signal, parabolically refined.

    Returns a list of (location_mhz, height) sorted by location.
    """
    x = curve.detuning_mhz
    y = curve.signal
    peaks = []
    for i in range(1, len(y) - 1):
        if y[i] > y[i - 1] and y[i] > y[i + 1]:
            denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
            if denom < 0.0:
                offset = 0.5 * (y[i - 1] - y[i + 1]) / denom
                loc = x[i] + offset * (x[i + 1] - x[i])
                height = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * offset
            else:
                loc, height = x[i], y[i]
            peaks.append((float(loc), float(height)))
    return peaks
