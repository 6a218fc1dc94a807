"""Canonical parameters and initial states of the driven, dissipative dimer.

Unit convention
---------------
Every rate, detuning and coupling is stored internally as an *angular*
frequency in rad/us, and time is measured in us.  Laboratory numbers are
quoted in MHz under two different conventions: plain transition/coupling
frequencies ("V12 = 950 MHz") and decay rates quoted with an explicit
2*pi ("Gamma = 2*pi x 50 MHz", i.e. the 2*pi-divided figure is 50).
:func:`to_angular` maps both to rad/us (1 MHz quoted -> 2*pi rad/us), so
no loose factor of 2*pi ever enters the dynamics.

Basis ordering is {|00>, |01>, |10>, |11>} with qubit 1 the left tensor
factor; rho[i, j] indexes |i1 i2><j1 j2| with i = 2*i1 + i2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, InvalidStateError

TWO_PI = 2.0 * math.pi

#: accepted quoting conventions for laboratory values
KIND_FREQUENCY = "frequency"
KIND_RATE = "rate_over_2pi"
_KINDS = (KIND_FREQUENCY, KIND_RATE)


def to_angular(value_mhz, kind=KIND_FREQUENCY):
    """Convert a quoted MHz figure to the internal angular unit (rad/us).

    Parameters
    ----------
    value_mhz : float
        The number as quoted: for ``kind="frequency"`` an ordinary
        frequency in MHz; for ``kind="rate_over_2pi"`` the figure that
        multiplies an explicit 2*pi (a rate quoted "2*pi x 50 MHz" is
        passed as 50).
    kind : str
        One of ``"frequency"`` or ``"rate_over_2pi"``.

    Both conventions map by the same factor (1 MHz -> 2*pi rad/us); the
    ``kind`` argument exists so call sites state which convention the
    source number uses.
    """
    if kind not in _KINDS:
        raise InvalidParameterError(f"unknown unit kind {kind!r}; expected one of {_KINDS}")
    value_mhz = float(value_mhz)
    if not math.isfinite(value_mhz):
        raise InvalidParameterError(f"non-finite input {value_mhz!r}")
    return TWO_PI * value_mhz


@dataclass(frozen=True)
class DimerParams:
    """All physical rates/detunings/couplings, in angular rad/us.

    Attributes
    ----------
    gamma1, gamma2 : float
        Individual spontaneous emission rates (>= 0).
    gamma12 : float
        Collective spontaneous emission rate; real, bounded by
        sqrt(gamma1 * gamma2) (Cauchy-Schwarz for the decay matrix).
    v12 : float
        Dipole-dipole interaction strength.
    delta_minus : float
        nu1 - nu2 (difference of the transition frequencies).
    delta_plus : float
        (nu1 + nu2) - 2*nuL, the *full* sum detuning.  Plot axes labelled
        "Delta_+/2" carry half of this, converted back to MHz.
    delta_e : float
        Radiative shift of the doubly excited state |11>.
    ell1, ell2 : float
        Laser coupling amplitudes per molecule.
    """

    gamma1: float
    gamma2: float
    gamma12: float
    v12: float
    delta_minus: float
    delta_plus: float
    delta_e: float
    ell1: float
    ell2: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma12", "v12", "delta_minus",
                     "delta_plus", "delta_e", "ell1", "ell2"):
            val = getattr(self, name)
            if not isinstance(val, (int, float)) or isinstance(val, bool):
                raise InvalidParameterError(f"{name} must be a real number, got {val!r}")
            if not math.isfinite(val):
                raise InvalidParameterError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, float(val))
        if self.gamma1 < 0.0 or self.gamma2 < 0.0:
            raise InvalidParameterError(
                f"emission rates must be nonnegative (gamma1={self.gamma1}, gamma2={self.gamma2})")
        bound = math.sqrt(self.gamma1 * self.gamma2)
        if abs(self.gamma12) > bound * (1.0 + 1e-12) + 1e-300:
            raise InvalidParameterError(
                f"|gamma12|={abs(self.gamma12)} exceeds sqrt(gamma1*gamma2)={bound}")

    @classmethod
    def from_mhz(cls, *, gamma1_mhz_over_2pi, gamma2_mhz_over_2pi,
                 gamma12_mhz_over_2pi, v12_mhz, delta_minus_mhz,
                 delta_plus_mhz, delta_e_mhz, ell1_mhz, ell2_mhz):
        """Build from laboratory MHz figures (rates in their 2*pi-divided quoting)."""
        return cls(
            gamma1=to_angular(gamma1_mhz_over_2pi, KIND_RATE),
            gamma2=to_angular(gamma2_mhz_over_2pi, KIND_RATE),
            gamma12=to_angular(gamma12_mhz_over_2pi, KIND_RATE),
            v12=to_angular(v12_mhz),
            delta_minus=to_angular(delta_minus_mhz),
            delta_plus=to_angular(delta_plus_mhz),
            delta_e=to_angular(delta_e_mhz),
            ell1=to_angular(ell1_mhz),
            ell2=to_angular(ell2_mhz),
        )

    @property
    def delta1(self):
        """Laser detuning of molecule 1: nu1 - nuL, angular."""
        return 0.5 * (self.delta_plus + self.delta_minus)

    @property
    def delta2(self):
        """Laser detuning of molecule 2: nu2 - nuL, angular."""
        return 0.5 * (self.delta_plus - self.delta_minus)


def check_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-12, eig_floor=-1e-9):
    """Validate the structural invariants of a two-qubit density matrix.

    Raises :class:`InvalidStateError` naming the violated constraint.
    Returns the input array (as complex ndarray) on success.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.view(float))):
        raise InvalidStateError("matrix contains non-finite entries")
    herm_dev = np.abs(rho - rho.conj().T).max()
    if herm_dev > herm_tol:
        raise InvalidStateError(f"not Hermitian: max |rho - rho^dag| = {herm_dev:.3e}")
    tr_dev = abs(rho.trace() - 1.0)
    if tr_dev > trace_tol:
        raise InvalidStateError(f"trace deviates from 1 by {tr_dev:.3e}")
    min_eig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
    if min_eig < eig_floor:
        raise InvalidStateError(f"negative eigenvalue {min_eig:.3e} below floor {eig_floor:.1e}")
    return rho


def _pure(vec):
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def _check_unit_interval(name, value):
    value = float(value)
    if not math.isfinite(value) or value < 0.0 or value > 1.0:
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def psi_alpha(alpha, phi=0.0):
    """Density matrix of sqrt(alpha)|01> + e^{i phi} sqrt(1-alpha)|10>."""
    alpha = _check_unit_interval("alpha", alpha)
    vec = np.zeros(4, dtype=complex)
    vec[1] = math.sqrt(alpha)
    vec[2] = np.exp(1j * phi) * math.sqrt(1.0 - alpha)
    return _pure(vec)


def psi_zero_one(alpha, phi=0.0):
    """Density matrix of sqrt(alpha)|00> + e^{i phi} sqrt(1-alpha)|11>."""
    alpha = _check_unit_interval("alpha", alpha)
    vec = np.zeros(4, dtype=complex)
    vec[0] = math.sqrt(alpha)
    vec[3] = np.exp(1j * phi) * math.sqrt(1.0 - alpha)
    return _pure(vec)


def product_state(gamma, zeta, phase1=0.0, phase2=0.0):
    """Separable state (sqrt(g)|0> + e^{i p1} sqrt(1-g)|1>) x (same with zeta, p2)."""
    gamma = _check_unit_interval("gamma", gamma)
    zeta = _check_unit_interval("zeta", zeta)
    q1 = np.array([math.sqrt(gamma), np.exp(1j * phase1) * math.sqrt(1.0 - gamma)])
    q2 = np.array([math.sqrt(zeta), np.exp(1j * phase2) * math.sqrt(1.0 - zeta)])
    return _pure(np.kron(q1, q2))


@dataclass(frozen=True)
class XStateSpec:
    """Populations (a, b, c, d) and coherences (w, z) of an X-form state.

    ``w`` couples |00> <-> |11>, ``z`` couples |01> <-> |10>.
    """

    a: float
    b: float
    c: float
    d: float
    w: complex = 0.0
    z: complex = 0.0


def x_state(spec):
    """Assemble an X-form density matrix, validating positivity of the X block.

    The matrix has populations on the diagonal and (w, z) on the
    anti-diagonal; all other entries vanish.
    """
    pops = {"a": spec.a, "b": spec.b, "c": spec.c, "d": spec.d}
    for name, p in pops.items():
        if not math.isfinite(float(p)):
            raise InvalidStateError(f"population {name} is not finite")
        if p < -1e-12:
            raise InvalidStateError(f"population {name}={p} is negative")
    total = spec.a + spec.b + spec.c + spec.d
    if abs(total - 1.0) > 1e-12:
        raise InvalidStateError(f"populations sum to {total}, not 1")
    if abs(spec.w) ** 2 > spec.a * spec.d + 1e-12:
        raise InvalidStateError(f"|w|^2={abs(spec.w)**2} exceeds a*d={spec.a * spec.d}")
    if abs(spec.z) ** 2 > spec.b * spec.c + 1e-12:
        raise InvalidStateError(f"|z|^2={abs(spec.z)**2} exceeds b*c={spec.b * spec.c}")
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = spec.a, spec.b, spec.c, spec.d
    rho[0, 3] = spec.w
    rho[3, 0] = np.conj(spec.w)
    rho[1, 2] = spec.z
    rho[2, 1] = np.conj(spec.z)
    return rho


def x_family_a(a):
    """The one-parameter X family: populations (a/3, 1/3, 1/3, (1-a)/3), z = 1/3."""
    a = _check_unit_interval("a", a)
    return x_state(XStateSpec(a / 3.0, 1.0 / 3.0, 1.0 / 3.0, (1.0 - a) / 3.0,
                              w=0.0, z=1.0 / 3.0))


def bell_psi_plus():
    """|psi+> = (|01> + |10>)/sqrt(2) as a density matrix."""
    return psi_alpha(0.5, 0.0)


def werner_state(p):
    """p |psi+><psi+| + (1-p) I/4."""
    p = _check_unit_interval("p", p)
    return p * bell_psi_plus() + (1.0 - p) * np.eye(4, dtype=complex) / 4.0
