import numpy as np
import pytest

from dimersim import (DipoleGeometry, InvalidGeometryError, coupling_general,
                      coupling_near_field)

EX, EY, EZ = np.eye(3)


def parallel_perp(z):
    return DipoleGeometry(mu1_hat=EX, mu2_hat=EX, r12_hat=EZ, z=z)


class TestDipoleGeometry:
    def test_rejects_non_unit_vector(self):
        with pytest.raises(InvalidGeometryError):
            DipoleGeometry(mu1_hat=[1.0, 0.0, 1.0], mu2_hat=EX, r12_hat=EZ, z=0.1)

    def test_rejects_nonpositive_z(self):
        with pytest.raises(InvalidGeometryError):
            DipoleGeometry(mu1_hat=EX, mu2_hat=EX, r12_hat=EZ, z=0.0)
        with pytest.raises(InvalidGeometryError):
            DipoleGeometry(mu1_hat=EX, mu2_hat=EX, r12_hat=EZ, z=-1.0)


class TestNearField:
    def test_parallel_perpendicular(self):
        v12, g12 = coupling_near_field(parallel_perp(0.1), 2.0, 2.0)
        assert v12 == pytest.approx(3.0 * 2.0 / (8.0 * np.pi * 1e-3))
        assert g12 == pytest.approx(2.0)

    def test_orthogonal_dipoles_vanish(self):
        geom = DipoleGeometry(mu1_hat=EX, mu2_hat=EY, r12_hat=EZ, z=0.3)
        assert coupling_near_field(geom, 1.0, 1.0) == (0.0, 0.0)

    def test_dipoles_along_separation(self):
        geom = DipoleGeometry(mu1_hat=EZ, mu2_hat=EZ, r12_hat=EZ, z=0.2)
        v12, g12 = coupling_near_field(geom, 1.0, 4.0)
        assert v12 == pytest.approx(-2.0 * 3.0 * 2.0 / (8.0 * np.pi * 0.2 ** 3))
        assert g12 == pytest.approx(2.0)


class TestGeneral:
    def test_collective_rate_near_field_limit(self):
        geom = parallel_perp(1e-3)
        _, g12 = coupling_general(geom, 1.0, 4.0)
        assert abs(g12 - 2.0) / 2.0 < 1e-5

    def test_orthogonal_dipoles_vanish(self):
        geom = DipoleGeometry(mu1_hat=EX, mu2_hat=EY, r12_hat=EZ, z=2.0)
        assert coupling_general(geom, 1.0, 1.0) == (0.0, 0.0)

    def test_collective_rate_at_z_pi(self):
        # the sin z / z kernel vanishes, leaving the cos z / z^2 term
        _, g12 = coupling_general(parallel_perp(np.pi), 1.0, 1.0)
        assert g12 == pytest.approx(1.5 * np.cos(np.pi) / np.pi ** 2)


class TestProperties:
    def test_swap_symmetry(self, rng):
        for _ in range(20):
            mu1 = rng.normal(size=3); mu1 /= np.linalg.norm(mu1)
            mu2 = rng.normal(size=3); mu2 /= np.linalg.norm(mu2)
            r = rng.normal(size=3); r /= np.linalg.norm(r)
            z = rng.uniform(0.05, 3.0)
            g1, g2 = rng.uniform(0.5, 5.0, 2)
            a = DipoleGeometry(mu1_hat=mu1, mu2_hat=mu2, r12_hat=r, z=z)
            b = DipoleGeometry(mu1_hat=mu2, mu2_hat=mu1, r12_hat=r, z=z)
            for fn in (coupling_near_field, coupling_general):
                va, ga = fn(a, g1, g2)
                vb, gb = fn(b, g2, g1)
                assert va == pytest.approx(vb, rel=1e-12, abs=1e-15)
                assert ga == pytest.approx(gb, rel=1e-12, abs=1e-15)

    def test_rate_scaling(self):
        geom = parallel_perp(0.7)
        for fn in (coupling_near_field, coupling_general):
            v1, g1 = fn(geom, 1.0, 2.0)
            v2, g2 = fn(geom, 2.0, 4.0)
            assert v2 == pytest.approx(2.0 * v1)
            assert g2 == pytest.approx(2.0 * g1)

    def test_near_field_consistency_bound(self):
        # leading retardation correction to the interaction channel is O(z^2)
        for z in np.geomspace(1e-3, 1e-2, 7):
            geom = parallel_perp(z)
            vn, _ = coupling_near_field(geom, 1.0, 1.0)
            vg, _ = coupling_general(geom, 1.0, 1.0)
            assert abs(vg - vn) / abs(vn) <= 10.0 * z * z

    def test_interaction_signs(self):
        v_perp, _ = coupling_near_field(parallel_perp(0.4), 1.0, 1.0)
        assert v_perp > 0.0
        along = DipoleGeometry(mu1_hat=EZ, mu2_hat=EZ, r12_hat=EZ, z=0.4)
        v_along, _ = coupling_near_field(along, 1.0, 1.0)
        assert v_along < 0.0
        # retarded forms share the signs well inside the near zone
        assert coupling_general(parallel_perp(0.05), 1.0, 1.0)[0] > 0.0
        assert coupling_general(DipoleGeometry(mu1_hat=EZ, mu2_hat=EZ, r12_hat=EZ,
                                               z=0.05), 1.0, 1.0)[0] < 0.0
