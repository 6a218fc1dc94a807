"""Dipole-dipole coupling strength and collective decay from geometry.

Both molecules sit a scaled distance ``z = n * k0 * r12`` apart (``n``
refraction index, ``k0`` vacuum wavenumber, ``r12`` physical separation)
with unit transition-dipole orientations ``mu1_hat``, ``mu2_hat`` and unit
separation direction ``r12_hat``.

Near-field closed forms (z << 1), with b2 = mu1.mu2 - 3(mu1.r)(mu2.r):

    V12      = 3 sqrt(G1 G2) / (8 pi z^3) * b2
    Gamma12  = sqrt(G1 G2) * (mu1 . mu2)

The retarded (general-z) forms combine b1 = mu1.mu2 - (mu1.r)(mu2.r) and
b2 with cos z / sin z kernels.  Each channel is normalized so its z -> 0
limit reproduces the near-field form above: the V12 channel keeps the
3 sqrt(G1 G2)/(8 pi) prefactor, while the Gamma12 channel (whose kernel
combination limits to 2/3) carries (3/2) sqrt(G1 G2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGeometryError


def _unit(name, vec):
    vec = np.asarray(vec, dtype=float)
    if vec.shape != (3,):
        raise InvalidGeometryError(f"{name} must be a 3-vector, got shape {vec.shape}")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-12:
        raise InvalidGeometryError(f"{name} must be unit norm, got |{name}| = {norm!r}")
    return vec


@dataclass(frozen=True)
class DipoleGeometry:
    """Unit dipole orientations, separation direction and scaled separation z."""

    mu1_hat: np.ndarray
    mu2_hat: np.ndarray
    r12_hat: np.ndarray
    z: float = field(default=0.0)

    def __post_init__(self):
        object.__setattr__(self, "mu1_hat", _unit("mu1_hat", self.mu1_hat))
        object.__setattr__(self, "mu2_hat", _unit("mu2_hat", self.mu2_hat))
        object.__setattr__(self, "r12_hat", _unit("r12_hat", self.r12_hat))
        z = float(self.z)
        if not np.isfinite(z) or z <= 0.0:
            raise InvalidGeometryError(f"scaled separation z must be positive, got {z!r}")
        object.__setattr__(self, "z", z)


def _orientation_factors(geom):
    mu_dot = float(geom.mu1_hat @ geom.mu2_hat)
    m1r = float(geom.mu1_hat @ geom.r12_hat)
    m2r = float(geom.mu2_hat @ geom.r12_hat)
    b1 = mu_dot - m1r * m2r
    b2 = mu_dot - 3.0 * m1r * m2r
    return mu_dot, b1, b2


def coupling_near_field(geom, gamma1, gamma2):
    """Near-field (z << 1) dipole coupling and collective decay.

    Returns ``(v12, gamma12)`` in the units of the supplied rates.
    """
    if gamma1 < 0.0 or gamma2 < 0.0:
        raise InvalidGeometryError("emission rates must be nonnegative")
    root = np.sqrt(gamma1 * gamma2)
    mu_dot, _, b2 = _orientation_factors(geom)
    v12 = 3.0 * root / (8.0 * np.pi * geom.z ** 3) * b2
    gamma12 = root * mu_dot
    return v12, gamma12


def coupling_general(geom, gamma1, gamma2):
    """Retarded dipole coupling and collective decay at arbitrary z.

    Returns ``(v12, gamma12)``; both reduce to :func:`coupling_near_field`
    as z -> 0 (the v12 channel up to an O(z^2) retardation correction).
    """
    if gamma1 < 0.0 or gamma2 < 0.0:
        raise InvalidGeometryError("emission rates must be nonnegative")
    root = np.sqrt(gamma1 * gamma2)
    _, b1, b2 = _orientation_factors(geom)
    z = geom.z
    cz, sz = np.cos(z), np.sin(z)
    pref_v = 3.0 * root / (8.0 * np.pi)
    pref_g = 1.5 * root
    v12 = pref_v * (-b1 * cz / z + b2 * (cz / z ** 3 + sz / z ** 2))
    gamma12 = pref_g * (b1 * sz / z + b2 * (cz / z ** 2 - sz / z ** 3))
    return v12, gamma12
