import numpy as np
import pytest

from dimersim import (InvalidParameterError, UnknownPresetError, concurrence_series,
                      evolve, preset, preset_names, resolve_point, run_sweep,
                      stationary_concurrence)

EXPECTED_NAMES = {
    "fig1a", "fig1b", "fig1cd",
    "fig2a", "fig2b", "fig2c", "fig2d",
    "fig3a", "fig3b", "fig3c", "fig3d",
    "fig4-vacuum",
    "fig5a", "fig5b", "fig5c",
    "fig6a", "fig6b", "fig6c",
    "fig7a", "fig7b",
    "fig8a", "fig8b",
    "fig-collapse-revival", "fig-interplay",
}

TWO_PI = 2.0 * np.pi


class TestRegistry:
    def test_all_names_registered(self):
        assert set(preset_names()) == EXPECTED_NAMES

    def test_unknown_name_lists_available(self):
        with pytest.raises(UnknownPresetError, match="fig2a"):
            preset("nonexistent")

    def test_fig2a_values(self):
        p = preset("fig2a").params
        assert p.delta_plus == 0.0
        assert p.ell1 == pytest.approx(TWO_PI * 500.0)
        assert p.ell2 == pytest.approx(TWO_PI * 500.0)
        assert p.gamma1 == pytest.approx(TWO_PI * 50.0)
        assert p.gamma12 == pytest.approx(TWO_PI * 9.0)
        assert p.delta_minus == pytest.approx(TWO_PI * 2320.0)
        assert p.v12 == pytest.approx(TWO_PI * 950.0)
        assert p.delta_e == 0.0

    def test_collapse_revival_values(self):
        p = preset("fig-collapse-revival").params
        assert p.v12 == 0.0
        assert p.gamma12 == 0.0
        assert p.delta_e == pytest.approx(-TWO_PI * 160.0)
        assert p.gamma1 == pytest.approx(4.0 * np.pi)
        assert p.delta_minus == pytest.approx(TWO_PI * 2320.0)
        assert p.delta_plus == pytest.approx(TWO_PI * 2638.0)
        assert p.ell1 == pytest.approx(TWO_PI * 200.0)

    def test_esb_presets_prepare_qubit1_excited(self):
        for name in ("fig3a", "fig3b", "fig3c", "fig3d"):
            _, rho0 = resolve_point(preset(name), {"zeta": 0.3})
            # qubit 1 pinned to |1>: no weight in the 0x sector
            assert rho0[0, 0] == 0.0 and rho0[1, 1] == 0.0
            assert rho0[2, 2] == pytest.approx(0.3)

    def test_horizons_positive(self):
        for name in preset_names():
            pre = preset(name)
            if pre.kind == "trajectory":
                assert pre.horizon_us > 0.0
                assert pre.samples >= 2


class TestResolvePoint:
    def test_family_override(self):
        params, rho0 = resolve_point(preset("fig2a"), {"alpha": 0.25})
        assert rho0[1, 1] == pytest.approx(0.25)
        assert params.ell1 == pytest.approx(TWO_PI * 500.0)

    def test_param_axis_override(self):
        params, _ = resolve_point(preset("fig7a"), {"ell_mhz": 314.0})
        assert params.ell1 == pytest.approx(TWO_PI * 314.0)
        assert params.ell2 == pytest.approx(TWO_PI * 314.0)

    def test_unknown_axis_rejected(self):
        with pytest.raises(InvalidParameterError):
            resolve_point(preset("fig2a"), {"bogus": 1.0})


class TestRunSweep:
    def test_single_point_equals_direct_call(self):
        pre = preset("fig2a")
        gamma = pre.params.gamma1
        times = np.linspace(0.0, 0.5 / gamma, 60)
        grid = run_sweep(pre, axis="alpha", values=[0.3], times=times, tol=1e-9)
        params, rho0 = resolve_point(pre, {"alpha": 0.3})
        direct = concurrence_series(evolve(rho0, params, times, tol=1e-9))
        assert np.abs(grid.values[0] - direct.values).max() <= 1e-12

    def test_thread_count_does_not_change_grid(self):
        pre = preset("fig4-vacuum")
        times = np.linspace(0.0, pre.horizon_us / 4.0, 80)
        vals = np.linspace(0.0, 1.0, 5)
        a = run_sweep(pre, values=vals, times=times, threads=1)
        b = run_sweep(pre, values=vals, times=times, threads=3)
        assert np.array_equal(a.values, b.values)

    def test_values_within_unit_interval(self):
        pre = preset("fig4-vacuum")
        times = np.linspace(0.0, pre.horizon_us / 4.0, 60)
        grid = run_sweep(pre, values=np.linspace(0.0, 1.0, 7), times=times)
        assert grid.values.min() >= 0.0 and grid.values.max() <= 1.0
        assert grid.values.shape == (7, 60)

    def test_relabeling_symmetry_on_driven_family(self):
        # swap drive amplitudes and detuning sign, mirror the family parameter
        pre_b = preset("fig2b")
        gamma = pre_b.params.gamma1
        times = np.linspace(0.0, 2.0 / gamma, 80)
        alphas = np.array([0.2, 0.5, 0.8])
        grid = run_sweep(pre_b, axis="alpha", values=alphas, times=times, tol=1e-10)
        from dimersim.scenarios import ScenarioPreset
        from types import MappingProxyType
        system = dict(pre_b.system_mhz)
        system["ell1_mhz"], system["ell2_mhz"] = system["ell2_mhz"], system["ell1_mhz"]
        system["delta_minus_mhz"] = -system["delta_minus_mhz"]
        mirrored = ScenarioPreset(
            name="mirror", system_mhz=MappingProxyType(system), family="psi_alpha",
            family_defaults=MappingProxyType({}), sweep_param="alpha",
            sweep_range=(0.0, 1.0), horizon_us=pre_b.horizon_us,
            samples=pre_b.samples, kind="trajectory", description="test mirror")
        grid_m = run_sweep(mirrored, axis="alpha", values=1.0 - alphas, times=times,
                           tol=1e-10)
        assert np.abs(grid.values - grid_m.values).max() <= 1e-7

    def test_spectrum_preset_rejected(self):
        with pytest.raises(InvalidParameterError):
            run_sweep(preset("fig1a"))

    def test_integration_failure_carries_axis_value(self, monkeypatch):
        from dimersim import IntegrationFailureError
        import dimersim.scenarios as scen

        def explode(rho0, params, times, tol=1e-9):
            raise IntegrationFailureError("step size underflow at t = 1e-3 us", 1e-3)

        monkeypatch.setattr(scen, "evolve", explode)
        with pytest.raises(IntegrationFailureError, match="alpha = 0.5") as exc:
            run_sweep(preset("fig2a"), values=[0.5])
        assert exc.value.time_us == 1e-3


class TestDriveShiftInterplay:
    """Revival needs both the drive and the level shift; drive alone only kills."""

    def horizon(self, params):
        return 5.0 / params.gamma1

    def run(self, overrides):
        pre = preset("fig-interplay")
        params, rho0 = resolve_point(pre, overrides)
        times = np.linspace(0.0, self.horizon(params), 1200)
        series = concurrence_series(evolve(rho0, params, times, tol=1e-9))
        return series

    def test_shift_plus_drive_revives(self):
        from dimersim import detect_birth, detect_death
        from dimersim.entanglement import EntanglementSeries
        series = self.run({"ell_mhz": 200.0})
        death = detect_death(series)
        assert death is not None
        start = int(np.searchsorted(series.times, death.time))
        tail = EntanglementSeries(series.times[start:], series.values[start:])
        assert detect_birth(tail, eps=0.01) is not None

    def test_drive_without_shift_only_kills(self):
        from dimersim import detect_birth, detect_death
        from dimersim.entanglement import EntanglementSeries
        series = self.run({"delta_e_mhz": 0.0})
        death = detect_death(series)
        assert death is not None
        start = int(np.searchsorted(series.times, death.time))
        tail = EntanglementSeries(series.times[start:], series.values[start:])
        assert detect_birth(tail, eps=0.01) is None

    def test_undriven_decays_asymptotically(self):
        from dimersim import detect_death
        series = self.run({"ell_mhz": 0.0})
        assert detect_death(series) is None
        assert series.values[-1] > 0.0

    def test_feeble_drive_decays_asymptotically_early(self):
        # a 1 MHz drive builds a tiny double-excitation floor that kills the
        # decaying coherence only around 3.4/Gamma; the early window is clean
        from dimersim import detect_death
        pre = preset("fig-interplay")
        params, rho0 = resolve_point(pre, {"ell_mhz": 1.0})
        times = np.linspace(0.0, 2.0 / params.gamma1, 600)
        series = concurrence_series(evolve(rho0, params, times, tol=1e-9))
        assert detect_death(series) is None


class TestStationaryConcurrence:
    def test_strong_symmetric_driving_kills_entanglement(self):
        assert stationary_concurrence(preset("fig2a"), axis_value=0.5) < 0.01

    def test_undriven_scenario_is_zero(self):
        assert stationary_concurrence(preset("fig4-vacuum"), axis_value=0.0) == 0.0

    def test_horizon_precondition(self):
        pre = preset("fig2a")
        with pytest.raises(InvalidParameterError):
            stationary_concurrence(pre, axis_value=0.5,
                                   horizon_us=10.0 / pre.params.gamma1)
