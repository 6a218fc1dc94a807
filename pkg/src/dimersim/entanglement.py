"""Two-qubit concurrence, ESD/ESB event detection, and closed-form death times.

The concurrence of a two-qubit state is C = max{0, l1 - l2 - l3 - l4}
where the l_i are the decreasingly ordered square roots of the
eigenvalues of rho rho~, and rho~ = (sy x sy) rho* (sy x sy) is the
spin-flipped state.  The production path reduces the non-Hermitian
product to a Hermitian problem, M = rho^{1/2} rho~ rho^{1/2}, solved with
the cyclic Jacobi eigensolver; :func:`concurrence_charpoly` extracts the
eigenvalues of rho rho~ directly from its characteristic polynomial and
serves as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, InvalidStateError, NumericalFailureError
from .linalg import charpoly_eigvals, hermitian_sqrt, jacobi_eigh

# sigma_y x sigma_y in the {|00>,|01>,|10>,|11>} basis
_YY = np.zeros((4, 4), dtype=complex)
_YY[0, 3] = _YY[3, 0] = -1.0
_YY[1, 2] = _YY[2, 1] = 1.0

#: eigenvalues of M = rho^{1/2} rho~ rho^{1/2} below this are a positivity bug
_M_NEG_FLOOR = -1e-12
#: nonnegative eigenvalues below this are double-precision matmul round-off
#: (trace-normalized inputs put ||M|| <= 1); without the floor their square
#: roots pollute exact zeros (product states) at the 1e-9 level
_M_ZERO_FLOOR = 1e-13


@dataclass
class EntanglementSeries:
    """Concurrence samples along a trajectory (values clamped to [0, 1])."""

    times: np.ndarray
    values: np.ndarray

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class EsdEvent:
    """A detected entanglement death or birth.

    ``resolved`` is True when bracketing refinement converged; plain grid
    detections report False.
    """

    kind: str  # "death" | "birth"
    time: float
    resolved: bool = False


def spin_flip(rho):
    """(sy x sy) rho* (sy x sy)."""
    rho = np.asarray(rho, dtype=complex)
    return _YY @ rho.conj() @ _YY


def _hermitian_part(rho):
    rho = np.asarray(rho, dtype=complex)
    dev = np.abs(rho - rho.conj().T).max()
    if dev > 1e-8:
        raise InvalidStateError(f"matrix far from Hermitian (deviation {dev:.3e})")
    return 0.5 * (rho + rho.conj().T)


def _lambdas_to_concurrence(lams):
    lams = np.sort(lams)[::-1]
    c = lams[0] - lams[1] - lams[2] - lams[3]
    return min(1.0, max(0.0, float(c)))


def concurrence(rho):
    """Wootters concurrence in [0, 1] via the Hermitian-reduction route.

    Tolerates integrator-level Hermiticity round-off (up to 1e-8); raises
    :class:`NumericalFailureError` if the reduced problem shows
    eigenvalues below -1e-12 (positivity bug upstream) or if the Jacobi
    iteration fails to converge.
    """
    rho = _hermitian_part(rho)
    root = hermitian_sqrt(rho, neg_floor=-1e-9)
    m = root @ spin_flip(rho) @ root
    w, _ = jacobi_eigh(m, eigvals_only=True)
    if w.min() < _M_NEG_FLOOR:
        raise NumericalFailureError(
            f"spin-flip product lost positivity (eigenvalue {w.min():.3e})")
    w = np.where(w < _M_ZERO_FLOOR, 0.0, w)
    return _lambdas_to_concurrence(np.sqrt(w))


def concurrence_charpoly(rho):
    """Concurrence from characteristic-polynomial roots of rho rho~.

    Independent of the Jacobi route; intended for cross-checks.
    """
    rho = _hermitian_part(rho)
    ev = charpoly_eigvals(rho @ spin_flip(rho))
    ev = ev.real  # eigenvalues of the PSD-product are real to round-off
    if ev.min() < _M_NEG_FLOOR:
        raise NumericalFailureError(
            f"spin-flip product lost positivity (eigenvalue {ev.min():.3e})")
    ev = np.where(ev < _M_ZERO_FLOOR, 0.0, ev)
    return _lambdas_to_concurrence(np.sqrt(ev))


def concurrence_x_form(rho):
    """Shortcut for X-form matrices: 2 max{0, |w| - sqrt(bc), |z| - sqrt(ad)}.

    Valid only when every entry off the diagonal/anti-diagonal vanishes;
    used as a test oracle, never as the production path (driving breaks
    the X structure).
    """
    rho = np.asarray(rho, dtype=complex)
    w = abs(rho[0, 3])
    z = abs(rho[1, 2])
    a, b, c, d = (rho[i, i].real for i in range(4))
    branch_w = w - math.sqrt(max(b * c, 0.0))
    branch_z = z - math.sqrt(max(a * d, 0.0))
    return max(0.0, 2.0 * branch_w, 2.0 * branch_z)


def concurrence_series(traj):
    """Concurrence at every sample of a trajectory."""
    values = np.empty(len(traj.times))
    for i, rho in enumerate(traj.states):
        try:
            values[i] = concurrence(rho)
        except (NumericalFailureError, InvalidStateError) as exc:
            raise type(exc)(f"at sample {i} (t = {traj.times[i]:.6e} us): {exc}") from exc
    return EntanglementSeries(times=np.asarray(traj.times, dtype=float), values=values)


def _interp_crossing(t0, t1, v0, v1, level):
    if v1 == v0:
        return t1
    frac = (level - v0) / (v1 - v0)
    return t0 + frac * (t1 - t0)


def _bisect_crossing(fn, lo, hi, level, time_tol):
    """Bisect fn(t) - level on [lo, hi]; returns (time, converged)."""
    f_lo = fn(lo) - level
    for _ in range(200):
        if hi - lo <= time_tol:
            return 0.5 * (lo + hi), True
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid) - level
        same_side = (f_mid > 0.0) == (f_lo > 0.0)
        if same_side:
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi), False


#: samples at or below this are "numerically zero" for the touch-zero check
_TOUCH_ZERO = 1e-12


def detect_death(series, eps=1e-6, refine=None, time_tol=None):
    """First time the concurrence crosses from above eps to below and dies.

    A death needs (i) a crossing from above ``eps`` to below, (ii) at
    least 3 consecutive samples below ``eps`` (filters numerical grazing
    in oscillatory scenarios), and (iii) the below-eps stretch actually
    touching zero (a sample <= 1e-12).  The last condition separates a
    true death, where the clamped concurrence sits at exactly 0, from an
    asymptotic tail that merely sinks through ``eps`` (the boundary
    members of both closed-form families do this within a 10/Gamma
    horizon).  Returns None when no such event exists.

    Parameters
    ----------
    series : EntanglementSeries
    eps : float
        Zero threshold (> 0).
    refine : callable, optional
        Map t -> concurrence for bisection refinement of the crossing
        (e.g. built on exact propagation); when given, the event time is
        localized to ``time_tol`` and the event is marked resolved.
    time_tol : float, optional
        Target bracket width for refinement; defaults to 1e-4 of the
        sample spacing at the crossing.
    """
    if not (eps > 0.0):
        raise InvalidParameterError(f"eps must be positive, got {eps!r}")
    t, v = series.times, series.values
    n = len(v)
    for i in range(1, n):
        if v[i - 1] > eps and v[i] < eps:
            if i + 3 <= n and np.all(v[i:i + 3] < eps):
                run_end = i
                while run_end < n and v[run_end] < eps:
                    run_end += 1
                if v[i:run_end].min() > _TOUCH_ZERO:
                    continue  # sinks through eps but never dies
                if refine is not None:
                    tol = time_tol if time_tol is not None else 1e-4 * (t[i] - t[i - 1])
                    when, ok = _bisect_crossing(refine, t[i - 1], t[i], eps, tol)
                    return EsdEvent("death", float(when), resolved=ok)
                when = _interp_crossing(t[i - 1], t[i], v[i - 1], v[i], eps)
                return EsdEvent("death", float(when), resolved=False)
    return None


def detect_birth(series, eps=1e-6):
    """First time an initially separable series rises above eps and stays there.

    Returns None both when no birth occurs and when the precondition
    (series starts below eps) is unmet.
    """
    if not (eps > 0.0):
        raise InvalidParameterError(f"eps must be positive, got {eps!r}")
    t, v = series.times, series.values
    n = len(v)
    if n == 0 or v[0] >= eps:
        return None  # not applicable
    for i in range(1, n):
        if v[i - 1] < eps and v[i] > eps:
            if i + 3 <= n and np.all(v[i:i + 3] > eps):
                when = _interp_crossing(t[i - 1], t[i], v[i - 1], v[i], eps)
                return EsdEvent("birth", float(when), resolved=False)
    return None


def scan_events(series, eps=1e-6):
    """Chronological list of all death/birth events in a series.

    Alternates :func:`detect_death` and :func:`detect_birth` on the
    remaining tail after each event.
    """
    events = []
    t, v = series.times, series.values
    start = 0
    looking_for = "death" if v[0] >= eps else "birth"
    while start < len(v) - 1:
        tail = EntanglementSeries(times=t[start:], values=v[start:])
        ev = detect_death(tail, eps) if looking_for == "death" else detect_birth(tail, eps)
        if ev is None:
            break
        events.append(ev)
        # resume past the first sample on the far side of the crossing
        beyond = np.searchsorted(t, ev.time, side="right")
        start = max(start + 1, int(beyond))
        looking_for = "birth" if looking_for == "death" else "death"
    return events


def esd_time_family_a(a, gamma):
    """Closed-form death time for the uniform-coherence X family under
    independent spontaneous emission (populations a/3, 1/3, 1/3, (1-a)/3,
    z = 1/3).

    Returns None for a >= 2/3, where the decay is asymptotic.
    """
    if not (0.0 <= a <= 1.0):
        raise InvalidParameterError(f"a must lie in [0, 1], got {a!r}")
    if not (gamma > 0.0):
        raise InvalidParameterError(f"gamma must be positive, got {gamma!r}")
    if a >= 2.0 / 3.0:
        return None
    arg = (1.0 - a) / (2.0 - 3.0 * a) * (2.0 - a + math.sqrt(a * a - a + 2.0))
    return math.log(arg) / gamma


def esd_time_alpha(alpha, gamma):
    """Closed-form death time for sqrt(alpha)|00> + sqrt(1-alpha)|11> under
    independent spontaneous emission.

    Returns None for alpha >= 1/2 (no physical solution); alpha = 0 gives
    a zero death time (the initial |11> state carries no entanglement).
    """
    if not (0.0 <= alpha <= 1.0):
        raise InvalidParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
    if not (gamma > 0.0):
        raise InvalidParameterError(f"gamma must be positive, got {gamma!r}")
    if alpha >= 0.5:
        return None
    beta = 1.0 - alpha
    return math.log(beta / (beta - math.sqrt(alpha - alpha * alpha))) / gamma
