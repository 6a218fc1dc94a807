import numpy as np
import pytest
from hypothesis import given, strategies as st

from dimersim import (DimerParams, InvalidParameterError, InvalidStateError,
                      XStateSpec, check_density_matrix, concurrence,
                      product_state, psi_alpha, psi_zero_one, to_angular,
                      werner_state, x_family_a, x_state)

TWO_PI = 2.0 * np.pi


class TestToAngular:
    def test_rate_quoted(self):
        assert to_angular(50.0, "rate_over_2pi") == pytest.approx(314.159265, abs=1e-6)

    def test_zero(self):
        assert to_angular(0.0) == 0.0

    def test_frequency_quoted(self):
        assert to_angular(950.0) == pytest.approx(5969.026, abs=1e-3)

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidParameterError):
            to_angular(float("nan"))
        with pytest.raises(InvalidParameterError):
            to_angular(float("inf"), "rate_over_2pi")

    def test_rejects_unknown_kind(self):
        with pytest.raises(InvalidParameterError):
            to_angular(1.0, "hz")

    @given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
    def test_linear(self, x, y):
        lhs = to_angular(x + y)
        rhs = to_angular(x) + to_angular(y)
        assert lhs == pytest.approx(rhs, rel=1e-15, abs=1e-9)


class TestDimerParams:
    def test_from_mhz_conversion(self):
        p = DimerParams.from_mhz(
            gamma1_mhz_over_2pi=50.0, gamma2_mhz_over_2pi=50.0,
            gamma12_mhz_over_2pi=9.0, v12_mhz=950.0, delta_minus_mhz=2320.0,
            delta_plus_mhz=0.0, delta_e_mhz=-160.0, ell1_mhz=200.0, ell2_mhz=200.0)
        assert p.gamma1 == pytest.approx(TWO_PI * 50.0)
        assert p.v12 == pytest.approx(TWO_PI * 950.0)
        assert p.delta1 == pytest.approx(TWO_PI * 1160.0)
        assert p.delta2 == pytest.approx(-TWO_PI * 1160.0)

    def test_rejects_negative_rates(self):
        with pytest.raises(InvalidParameterError):
            DimerParams(gamma1=-1.0, gamma2=1.0, gamma12=0.0, v12=0.0,
                        delta_minus=0.0, delta_plus=0.0, delta_e=0.0,
                        ell1=0.0, ell2=0.0)

    def test_rejects_collective_rate_above_bound(self):
        # |gamma12| must not exceed sqrt(gamma1 gamma2)
        with pytest.raises(InvalidParameterError):
            DimerParams.from_mhz(
                gamma1_mhz_over_2pi=50.0, gamma2_mhz_over_2pi=50.0,
                gamma12_mhz_over_2pi=60.0, v12_mhz=0.0, delta_minus_mhz=0.0,
                delta_plus_mhz=0.0, delta_e_mhz=0.0, ell1_mhz=0.0, ell2_mhz=0.0)

    def test_boundary_collective_rate_allowed(self):
        p = DimerParams(gamma1=4.0, gamma2=9.0, gamma12=6.0, v12=0.0,
                        delta_minus=0.0, delta_plus=0.0, delta_e=0.0,
                        ell1=0.0, ell2=0.0)
        assert p.gamma12 == 6.0

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidParameterError):
            DimerParams(gamma1=1.0, gamma2=1.0, gamma12=0.0, v12=float("nan"),
                        delta_minus=0.0, delta_plus=0.0, delta_e=0.0,
                        ell1=0.0, ell2=0.0)


class TestPsiAlpha:
    def test_bell_state(self):
        rho = psi_alpha(0.5, 0.0)
        assert rho[1, 1] == pytest.approx(0.5)
        assert rho[1, 2] == pytest.approx(0.5)
        assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_single_branch(self):
        rho = psi_alpha(1.0, 2.7)
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 1] = 1.0
        assert np.abs(rho - expected).max() < 1e-15

    def test_coherence_value(self):
        rho = psi_alpha(0.25, 0.0)
        assert rho[1, 2] == pytest.approx(np.sqrt(0.25 * 0.75), abs=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            psi_alpha(1.5)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 2.0 * np.pi))
    def test_purity_and_invariants(self, alpha, phi):
        rho = psi_alpha(alpha, phi)
        check_density_matrix(rho)
        assert abs((rho @ rho).trace() - 1.0) < 1e-12


class TestPsiZeroOne:
    def test_bell_type(self):
        rho = psi_zero_one(0.5, 0.0)
        assert rho[0, 3] == pytest.approx(0.5)
        assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_one_branch(self):
        rho = psi_zero_one(0.0, 0.0)
        assert rho[3, 3] == pytest.approx(1.0)

    def test_coherence_value(self):
        assert psi_zero_one(0.25, 0.0)[0, 3] == pytest.approx(0.4330127, abs=1e-7)


class TestProductState:
    def test_ground(self):
        rho = product_state(1.0, 1.0, 0.0, 0.0)
        assert rho[0, 0] == pytest.approx(1.0)

    def test_excited_times_superposition(self):
        # qubit 1 fully excited, qubit 2 in a superposition
        rho = product_state(0.0, 0.3, 0.0, 0.0)
        assert rho[0, 0] == rho[1, 1] == 0.0
        assert rho[2, 2] == pytest.approx(0.3)
        assert rho[3, 3] == pytest.approx(0.7)

    def test_balanced(self):
        rho = product_state(0.5, 0.5, 0.0, 0.0)
        assert np.abs(np.abs(rho) - 0.25).max() < 1e-15

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            product_state(-0.1, 0.5)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0),
           st.floats(0.0, 2.0 * np.pi), st.floats(0.0, 2.0 * np.pi))
    def test_always_separable(self, gamma, zeta, p1, p2):
        rho = product_state(gamma, zeta, p1, p2)
        check_density_matrix(rho)
        assert concurrence(rho) < 1e-12


class TestXState:
    def test_bell_member(self):
        rho = x_state(XStateSpec(0.0, 0.5, 0.5, 0.0, 0.0, 0.5))
        assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_pure_ground_member(self):
        rho = x_state(XStateSpec(1.0, 0.0, 0.0, 0.0, 0.0, 0.0))
        assert rho[0, 0] == pytest.approx(1.0)

    def test_family_a_zero_concurrence_value(self):
        # brute-force value for the a=0 family member: 2*(1/3 - 0) = 2/3
        rho = x_family_a(0.0)
        assert concurrence(rho) == pytest.approx(2.0 / 3.0, abs=1e-10)

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidStateError, match="sum"):
            x_state(XStateSpec(0.5, 0.5, 0.5, 0.5, 0.0, 0.0))

    def test_rejects_excess_coherence(self):
        with pytest.raises(InvalidStateError, match=r"\|z\|"):
            x_state(XStateSpec(0.25, 0.25, 0.25, 0.25, 0.0, 0.4))
        with pytest.raises(InvalidStateError, match=r"\|w\|"):
            x_state(XStateSpec(0.25, 0.25, 0.25, 0.25, 0.4, 0.0))

    def test_rejects_negative_population(self):
        with pytest.raises(InvalidStateError, match="negative"):
            x_state(XStateSpec(-0.1, 0.55, 0.55, 0.0, 0.0, 0.0))

    @given(st.integers(0, 10 ** 6))
    def test_family_a_valid_states(self, k):
        rho = x_family_a(k / 1e6)
        check_density_matrix(rho)


class TestWernerState:
    def test_endpoints(self):
        assert concurrence(werner_state(1.0)) == pytest.approx(1.0, abs=1e-12)
        assert concurrence(werner_state(0.0)) == 0.0

    def test_half_mixing(self):
        assert concurrence(werner_state(0.5)) == pytest.approx(0.25, abs=1e-10)

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            werner_state(1.2)

    @given(st.floats(0.0, 1.0))
    def test_concurrence_closed_form(self, p):
        # mixing |psi+> with I/4 gives C = max(0, (3p-1)/2)
        rho = werner_state(p)
        check_density_matrix(rho)
        assert concurrence(rho) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-10)


class TestCheckDensityMatrix:
    def test_rejects_non_hermitian(self):
        bad = np.eye(4, dtype=complex) / 4
        bad[0, 1] = 0.1
        with pytest.raises(InvalidStateError, match="Hermitian"):
            check_density_matrix(bad)

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidStateError, match="trace"):
            check_density_matrix(np.eye(4, dtype=complex))

    def test_rejects_negative_eigenvalue(self):
        bad = np.diag([0.6, 0.5, 0.0, -0.1]).astype(complex)
        with pytest.raises(InvalidStateError, match="eigenvalue"):
            check_density_matrix(bad)
