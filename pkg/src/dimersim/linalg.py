"""Dense eigensolvers for the small Hermitian problems in this package.

Two deliberately independent routes live here:

* :func:`jacobi_eigh` -- cyclic Jacobi rotations for complex Hermitian
  matrices (the production eigensolver behind the concurrence).
* :func:`charpoly_eigvals` -- eigenvalues of a general small matrix from
  the roots of its characteristic polynomial (Faddeev-LeVerrier
  coefficients), used as a cross-check oracle.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalFailureError


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return np.abs(off).max()


def jacobi_eigh(a, tol=1e-13, max_sweeps=60, eigvals_only=False):
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.

    Sweeps zero each off-diagonal element in turn with a complex Givens
    rotation until the largest off-diagonal magnitude falls below
    ``tol * max(1, scale)``.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    v : ndarray or None
        Unitary matrix with eigenvectors as columns,
        ``a @ v = v @ diag(w)``; None with ``eigvals_only``.

    Raises
    ------
    NumericalFailureError
        If convergence is not reached within ``max_sweeps`` sweeps.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    A = 0.5 * (a + a.conj().T)  # symmetrize round-off; input must be Hermitian
    V = None if eigvals_only else np.eye(n, dtype=complex)
    scale = max(1.0, np.abs(A).max())
    thresh = tol * scale
    u2 = np.empty((2, 2), dtype=complex)

    for _ in range(max_sweeps):
        if _offdiag_norm(A) <= thresh:
            w = np.diag(A).real.copy()
            order = np.argsort(w)
            return w[order], (None if V is None else V[:, order])
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= thresh * 1e-2:
                    continue
                phase = apq / r
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary on the (p, q) plane
                u2[0, 0] = phase * c
                u2[0, 1] = phase * s
                u2[1, 0] = -s
                u2[1, 1] = c
                idx = (p, q)
                A[:, idx] = A[:, idx] @ u2
                A[idx, :] = u2.conj().T @ A[idx, :]
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                if V is not None:
                    V[:, idx] = V[:, idx] @ u2

    raise NumericalFailureError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {_offdiag_norm(A):.3e})")


def hermitian_sqrt(a, neg_floor=-1e-9, tol=1e-13):
    """Positive square root of a Hermitian PSD matrix via :func:`jacobi_eigh`.

    Eigenvalues in ``[neg_floor, 0)`` are treated as round-off and clamped
    to zero; anything more negative raises.
    """
    w, v = jacobi_eigh(a, tol=tol)
    if w.min() < neg_floor:
        raise NumericalFailureError(
            f"matrix is not positive semidefinite: eigenvalue {w.min():.3e}")
    w = np.where(w < 0.0, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def charpoly_coeffs(m):
    """Monic characteristic-polynomial coefficients by Faddeev-LeVerrier.

    Returns ``[1, c_{n-1}, ..., c_0]`` with
    ``det(lam*I - m) = lam^n + c_{n-1} lam^{n-1} + ... + c_0``.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.zeros_like(m)
    ident = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ (mk + coeffs[k - 1] * ident) if k > 1 else m.copy()
        coeffs[k] = -mk.trace() / k
    return coeffs


def charpoly_eigvals(m):
    """Eigenvalues of a small matrix as roots of its characteristic polynomial."""
    return np.roots(charpoly_coeffs(m))
