"""Rotating-frame generator of the dimer master equation.

In the frame rotating at the laser frequency the Hamiltonian (divided by
hbar, all angular units) is time independent:

    H = d1 n1 + d2 n2 + delta_e |11><11|
        + v12 (sp1 sm2 + sm1 sp2)
        + ell1 (sp1 + sm1) + ell2 (sp2 + sm2)

with per-molecule detunings d1 = (delta_plus + delta_minus)/2 and
d2 = (delta_plus - delta_minus)/2, number operators ni = spi smi.

The dissipator is the four-term sum over individual (gamma1, gamma2) and
collective (gamma12 = gamma21, real) decay channels:

    L(rho) = -sum_{ab} gamma_ab/2 (rho sp_a sm_b + sp_a sm_b rho
                                   - 2 sm_a rho sp_b)

The full generator acts on column-vectorized density matrices
(columns stacked, ``vec(rho) = rho.reshape(16, order="F")``) as a dense
16x16 matrix, so vec(A rho B) = kron(B.T, A) vec(rho).
"""

from __future__ import annotations

import numpy as np

_SP = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |1><0|
_SM = _SP.T.copy()                                        # |0><1|
_I2 = np.eye(2, dtype=complex)

SP1 = np.kron(_SP, _I2)
SM1 = np.kron(_SM, _I2)
SP2 = np.kron(_I2, _SP)
SM2 = np.kron(_I2, _SM)
N1 = SP1 @ SM1
N2 = SP2 @ SM2

_I4 = np.eye(4, dtype=complex)


def vec(rho):
    """Column-stack a 4x4 matrix into a 16-vector."""
    return np.asarray(rho, dtype=complex).reshape(16, order="F")


def unvec(v):
    """Inverse of :func:`vec`."""
    return np.asarray(v, dtype=complex).reshape((4, 4), order="F")


def build_hamiltonian(params):
    """Rotating-frame Hamiltonian (4x4 Hermitian, rad/us)."""
    h = params.delta1 * N1 + params.delta2 * N2
    h[3, 3] += params.delta_e
    h = h + params.v12 * (SP1 @ SM2 + SM1 @ SP2)
    h = h + params.ell1 * (SP1 + SM1) + params.ell2 * (SP2 + SM2)
    return h


def _decay_channels(params):
    return ((params.gamma1, SP1, SM1, SM1, SP1),
            (params.gamma2, SP2, SM2, SM2, SP2),
            (params.gamma12, SP1, SM2, SM1, SP2),
            (params.gamma12, SP2, SM1, SM2, SP1))


def lindblad_dissipator(rho, params):
    """Dissipator L(rho): Hermitian, traceless 4x4 matrix."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for rate, sp_a, sm_b, jump_l, jump_r in _decay_channels(params):
        if rate == 0.0:
            continue
        k = sp_a @ sm_b
        out -= 0.5 * rate * (rho @ k + k @ rho - 2.0 * (jump_l @ rho @ jump_r))
    return out


def generator_action(rho, params, hamiltonian=None):
    """Direct evaluation of -i[H, rho] + L(rho)."""
    h = build_hamiltonian(params) if hamiltonian is None else hamiltonian
    rho = np.asarray(rho, dtype=complex)
    return -1j * (h @ rho - rho @ h) + lindblad_dissipator(rho, params)


def build_liouvillian(params):
    """Dense 16x16 superoperator L_v with unvec(L_v vec(rho)) = -i[H,rho] + L(rho)."""
    h = build_hamiltonian(params)
    lv = -1j * (np.kron(_I4, h) - np.kron(h.T, _I4))
    for rate, sp_a, sm_b, jump_l, jump_r in _decay_channels(params):
        if rate == 0.0:
            continue
        k = sp_a @ sm_b
        lv -= 0.5 * rate * (np.kron(_I4, k) + np.kron(k.T, _I4))
        lv += rate * np.kron(jump_r.T, jump_l)
    return lv
