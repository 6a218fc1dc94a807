"""Time evolution of the dimer density matrix.

The default path integrates the vectorized master equation
dy/dt = L_v y with an embedded Dormand-Prince 4(5) pair, stepping exactly
onto every requested sample time (no dense-output interpolation), which
keeps runs bit-reproducible.  A fixed-step classical RK4 mode exists for
convergence studies, and :func:`propagate_expm` provides exact
propagation of the time-independent generator through the matrix
exponential.

:func:`analytic_rho_eq6` is the closed-form solution for the undriven,
uncoupled dimer started in sqrt(alpha)|00> + sqrt(1-alpha)|11>; it is the
primary correctness oracle for the integrator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import IntegrationFailureError, InvalidParameterError
from .generator import build_liouvillian, unvec, vec
from .model import check_density_matrix

# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0),
)
# 5th-order weights coincide with the last A row (FSAL); the error weights
# are b5 - b4.
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
      -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

_MIN_TOL = 1e-13
_MAX_TOL = 1e-3
# step-controller safety; 0.7 keeps the accumulated global error within
# 10x the local tolerance even on 1e4-radian driven trajectories
_SAFETY = 0.7


@dataclass
class Trajectory:
    """Sampled solution of the master equation.

    Attributes
    ----------
    times : ndarray
        Strictly increasing sample times in us, starting at 0.
    states : ndarray, shape (n, 4, 4)
        Density matrix at each sample.
    meta : dict
        Method identifier and tolerances used.
    """

    times: np.ndarray
    states: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)


def _validate_times(times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise InvalidParameterError("times must be a non-empty 1-d grid")
    if times[0] != 0.0:
        raise InvalidParameterError(f"times must start at 0, got {times[0]!r}")
    if times.size > 1 and not np.all(np.diff(times) > 0.0):
        raise InvalidParameterError("times must be strictly increasing")
    return times


def _dopri5_step_matrices(lv, h, ident):
    """One-step and error-estimate matrices of the Dormand-Prince pair.

    For the linear system dy/dt = L y every stage is a matrix acting on
    y (K1 = L, Ki = L (I + h sum a_ij Kj)), so a full step collapses to
    y_new = M5 y with local-error estimate E y.  This is the identical
    RK map evaluated once per step size instead of once per step.
    """
    k1 = lv
    k2 = lv @ (ident + (h * _A[1][0]) * k1)
    k3 = lv @ (ident + h * (_A[2][0] * k1 + _A[2][1] * k2))
    k4 = lv @ (ident + h * (_A[3][0] * k1 + _A[3][1] * k2 + _A[3][2] * k3))
    k5 = lv @ (ident + h * (_A[4][0] * k1 + _A[4][1] * k2 + _A[4][2] * k3
                            + _A[4][3] * k4))
    k6 = lv @ (ident + h * (_A[5][0] * k1 + _A[5][1] * k2 + _A[5][2] * k3
                            + _A[5][3] * k4 + _A[5][4] * k5))
    m5 = ident + h * (_A[6][0] * k1 + _A[6][2] * k3 + _A[6][3] * k4
                      + _A[6][4] * k5 + _A[6][5] * k6)
    k7 = lv @ m5
    emat = h * (_E[0] * k1 + _E[2] * k3 + _E[3] * k4 + _E[4] * k5
                + _E[5] * k6 + _E[6] * k7)
    return m5, emat


def _dopri5(lv, y0, times, rtol, atol):
    """Integrate dy/dt = lv @ y, returning y at each time in `times[1:]`."""
    y = y0.copy()
    t = 0.0
    out = []
    ident = np.eye(lv.shape[0], dtype=complex)
    # conservative first step from the generator scale
    scale = max(np.abs(lv).sum(axis=1).max(), 1e-30)
    h = min(times[-1], 1e-2 / scale)
    # two cache slots so the nominal-h matrices survive the one-off
    # truncated steps that land on sample times
    cache = [(None, None, None), (None, None, None)]

    for t_target in times[1:]:
        while t < t_target:
            h_try = min(h, t_target - t)
            if h_try < 1e-14 * max(t, 1.0):
                raise IntegrationFailureError(
                    f"step size underflow at t = {t:.6e} us (stiff system?)", t)
            if cache[0][0] == h_try:
                _, m5, emat = cache[0]
            elif cache[1][0] == h_try:
                cache[0], cache[1] = cache[1], cache[0]
                _, m5, emat = cache[0]
            else:
                m5, emat = _dopri5_step_matrices(lv, h_try, ident)
                cache[0], cache[1] = (h_try, m5, emat), cache[0]
            y_new = m5 @ y
            err_vec = emat @ y
            sc = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
            with np.errstate(invalid="ignore", over="ignore"):
                err = np.sqrt(np.mean(np.abs(err_vec / sc) ** 2))
            if not np.isfinite(err):
                err = np.inf  # non-finite state: force rejection
            if err <= 1.0:
                t = t + h_try
                y = y_new
                fac = 5.0 if err == 0.0 else min(5.0, max(0.2, _SAFETY * err ** -0.2))
                if fac < 1.0:
                    h = h_try * fac
                elif fac > 1.3:
                    h = max(h, h_try * fac)
                # deadband fac in [1.0, 1.3]: hold the nominal step so the
                # cached step matrices survive smooth stretches
            else:
                h = h_try * max(0.2, min(0.9, _SAFETY * err ** -0.2))
        out.append(y.copy())
    return out


def _rk4_fixed(lv, y0, times, step):
    y = y0.copy()
    out = []
    t = 0.0
    for t_target in times[1:]:
        span = t_target - t
        n_sub = max(1, int(np.ceil(span / step - 1e-12)))
        h = span / n_sub
        for _ in range(n_sub):
            k1 = lv @ y
            k2 = lv @ (y + 0.5 * h * k1)
            k3 = lv @ (y + 0.5 * h * k2)
            k4 = lv @ (y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t_target
        out.append(y.copy())
    return out


def evolve(rho0, params, times, tol=1e-9, method="rk45", step=None):
    """Solve d rho/dt = -i[H, rho] + L(rho) at the requested sample times.

    Parameters
    ----------
    rho0 : ndarray
        Valid 4x4 density matrix at t = 0.
    params : DimerParams
    times : array_like
        Strictly increasing sample times (us) starting at 0.  The
        integrator lands exactly on each one.
    tol : float
        Relative local-error tolerance for the adaptive pair, within
        [1e-13, 1e-3].
    method : str
        ``"rk45"`` (adaptive Dormand-Prince, default) or ``"rk4"``
        (classical fixed step; requires ``step``).
    step : float, optional
        Fixed step size in us for ``method="rk4"``.

    Raises
    ------
    IntegrationFailureError
        On step-size underflow; carries the failure time.
    """
    times = _validate_times(times)
    rho0 = check_density_matrix(rho0, herm_tol=1e-10, trace_tol=1e-9, eig_floor=-1e-8)
    if not (_MIN_TOL <= tol <= _MAX_TOL):
        raise InvalidParameterError(
            f"tol must lie in [{_MIN_TOL:g}, {_MAX_TOL:g}], got {tol!r}")
    if method not in ("rk45", "rk4"):
        raise InvalidParameterError(f"unknown method {method!r}")

    states = np.empty((times.size, 4, 4), dtype=complex)
    states[0] = rho0
    meta = {"method": method, "rtol": float(tol)}
    if times.size > 1:
        lv = build_liouvillian(params)
        y0 = vec(rho0)
        if method == "rk45":
            atol = 1e-3 * tol
            meta["atol"] = atol
            ys = _dopri5(lv, y0, times, tol, atol)
        else:
            if step is None or not (step > 0.0):
                raise InvalidParameterError("fixed-step mode requires step > 0")
            meta["step"] = float(step)
            ys = _rk4_fixed(lv, y0, times, step)
        for i, y in enumerate(ys):
            states[i + 1] = unvec(y)
    return Trajectory(times=times, states=states, meta=meta)


def propagate_expm(rho0, params, t):
    """Exact propagation rho(t) = unvec(expm(L_v t) vec(rho0)).

    Uses scaling-and-squaring with Pade approximants for the matrix
    exponential; agrees with :func:`evolve` at its tolerance.
    """
    if not (t >= 0.0) or not np.isfinite(t):
        raise InvalidParameterError(f"propagation time must be >= 0, got {t!r}")
    rho0 = np.asarray(rho0, dtype=complex)
    if t == 0.0:
        return rho0.copy()
    lv = build_liouvillian(params)
    return unvec(scipy.linalg.expm(lv * t) @ vec(rho0))


def analytic_rho_eq6(alpha, t, gamma, delta_e, delta_plus):
    """Closed-form state of the undriven, uncoupled dimer.

    For gamma1 = gamma2 = ``gamma``, v12 = gamma12 = ell = 0 and initial
    state sqrt(alpha)|00> + sqrt(1-alpha)|11>, the populations are

        p00 = 1 + (1-alpha) e^{-2 G t} (1 - 2 e^{G t})
        p01 = p10 = (1-alpha) e^{-2 G t} (e^{G t} - 1)
        p11 = (1-alpha) e^{-2 G t}

    and the |00><11| coherence is sqrt(alpha(1-alpha)) e^{-G t} times the
    phase e^{+i (delta_e + delta_plus) t} fixed by the rotating-frame
    convention of :func:`dimersim.generator.build_hamiltonian` (pinned by a
    regression test against the integrator).  All rates angular, t in us.
    """
    if not (0.0 <= alpha <= 1.0):
        raise InvalidParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    if not (t >= 0.0):
        raise InvalidParameterError(f"t must be >= 0, got {t!r}")
    if not (gamma > 0.0):
        raise InvalidParameterError(f"gamma must be positive, got {gamma!r}")
    beta = 1.0 - alpha
    e1 = np.exp(-gamma * t)
    e2 = e1 * e1
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0 + beta * (e2 - 2.0 * e1)
    rho[1, 1] = rho[2, 2] = beta * (e1 - e2)
    rho[3, 3] = beta * e2
    coh = np.sqrt(alpha * beta) * e1 * np.exp(1j * (delta_e + delta_plus) * t)
    rho[0, 3] = coh
    rho[3, 0] = np.conj(coh)
    return rho
