import math

import numpy as np
import pytest

from donor_halo import (GAMMA_MIN_DIFFUSION, MaterialError, gamma_ceiling,
                        invert_power, occupancy, power_closed_form, power_map,
                        spectral_density, state_for_occupancy,
                        telegraph_correlation)
from donor_halo.kinetics import (balance_residuals, correlation_from_conditionals,
                                 hyperfine_correlation_amplitude, power_scale,
                                 spectral_density_quadrature, telegraph_amplitude,
                                 telegraph_p_matrix, telegraph_p_matrix_expm)

SCREEN_BOHR = 0.3233235838169365   # enclosed-charge fraction at the Bohr radius


def test_occupancy_half_point(gaas):
    n_half = 1.0 / (gaas.sigma_capture * gaas.recombination_time * gaas.velocity)
    state = occupancy(n_half, gaas)
    assert state.occupancy == pytest.approx(0.5, rel=1e-12)
    # correlation time combines recombination and capture
    assert state.tau_quad == pytest.approx(gaas.recombination_time / 2.0, rel=1e-12)


def test_correlation_time_combines_channels(gaas):
    # 1/tau_quad = 1/tau_r + 1/tau_capture holds for any density
    for n_f in (1e19, 1e21, 5e22):
        state = occupancy(n_f, gaas)
        assert 1.0 / state.tau_quad == pytest.approx(
            1.0 / state.tau_r + 1.0 / state.tau_capture, rel=1e-12)


def test_occupancy_limits(gaas):
    assert occupancy(1e30, gaas).occupancy == pytest.approx(1.0, abs=1e-6)
    idle = occupancy(0.0, gaas)
    assert idle.occupancy == 0.0
    assert idle.degenerate
    assert math.isinf(idle.tau_hyper)
    with pytest.raises(MaterialError):
        occupancy(-1.0, gaas)


def test_hyperfine_correlation_time_golden(gaas):
    state = occupancy(1e21, gaas)
    direct = 1.0 / (gaas.sigma_exchange * gaas.velocity * 1e21)
    assert state.tau_hyper == pytest.approx(direct, rel=1e-14)


def test_full_hyperfine_rate_combination(gaas):
    state = occupancy(1e21, gaas, spin_lattice_time=5e-9, exchange_time=2e-12)
    expected = 1.0 / (0.5 / gaas.recombination_time + 1.0 / 5e-9 + 1.0 / 2e-12)
    assert state.tau_hyper == pytest.approx(expected, rel=1e-14)


def test_state_for_occupancy_round_trip(gaas):
    for gamma_t in (0.1, 0.5, 0.9):
        state = state_for_occupancy(gamma_t, gaas)
        assert state.occupancy == pytest.approx(gamma_t, rel=1e-12)


def test_telegraph_switches_off():
    assert telegraph_amplitude(0.0, 0.3) == 0.0
    assert telegraph_amplitude(1.0, 0.3) == 0.0
    assert telegraph_amplitude(0.5, 0.0) == 0.0


def test_telegraph_zero_lag_value():
    # direct arithmetic of the closed form at the documented point
    expected = 0.25 * 0.3233 ** 2 / (1.0 - 0.5 * 0.3233) ** 2
    assert telegraph_amplitude(0.5, 0.3233) == pytest.approx(expected, rel=1e-12)
    assert telegraph_amplitude(0.5, 0.3233) == pytest.approx(0.03719, abs=2e-5)


def test_conditional_matrix_is_stochastic():
    for tau in (0.0, 0.5e-9, 4e-9):
        p = telegraph_p_matrix(tau, 1.3e-9, 0.6e-9)
        assert np.allclose(p.sum(axis=1), 1.0)
        assert np.all(p >= 0.0)
    occ = 1.3 / 1.9
    stationary = telegraph_p_matrix(1e3, 1.3e-9, 0.6e-9)
    assert np.allclose(stationary, [[1 - occ, occ], [1 - occ, occ]], atol=1e-12)


def test_conditional_matrix_matches_expm():
    for tau in (0.0, 0.2e-9, 1.1e-9, 6e-9):
        closed = telegraph_p_matrix(tau, 1.3e-9, 0.6e-9)
        oracle = telegraph_p_matrix_expm(tau, 1.3e-9, 0.6e-9)
        assert np.allclose(closed, oracle, atol=1e-12)


def test_correlation_reconstruction():
    occ = 0.35
    tau_occ, tau_empty = 0.9e-9, 0.9e-9 * (1 - occ) / occ
    amplitude = telegraph_amplitude(occ, SCREEN_BOHR)
    for tau in (0.0, 0.4e-9, 2.2e-9):
        direct = telegraph_correlation(tau, occ, SCREEN_BOHR, tau_occ, tau_empty)
        recon = correlation_from_conditionals(tau, occ, SCREEN_BOHR, tau_occ,
                                              tau_empty)
        assert abs(direct.g_analytic - recon) <= 1e-12 * amplitude


def test_correlation_requires_consistent_dwells():
    with pytest.raises(MaterialError, match="inconsistent occupancy"):
        telegraph_correlation(0.0, 0.4, 0.3, 1e-9, 1e-9)


def test_hyperfine_amplitude_predicate():
    assert [hyperfine_correlation_amplitude(g) for g in (0.0, 0.5, 1.0)] \
        == [0.0, 0.5, 1.0]


def test_spectral_density_closed_form():
    assert spectral_density(0.0, 1.3, 2e-9) == pytest.approx(2.0 * 1.3 * 2e-9)
    assert spectral_density(0.5e9, 1.3, 2e-9) == pytest.approx(1.3 * 2e-9)
    rng = np.random.default_rng(23)
    for _ in range(10):
        tau_c = float(rng.uniform(0.05, 5.0)) * 1e-9
        omega = float(rng.uniform(0.0, 4.0)) / tau_c
        assert spectral_density(omega, 0.7, tau_c) == pytest.approx(
            spectral_density_quadrature(omega, 0.7, tau_c), rel=1e-8)


def test_power_reference_point(gaas_zeta01):
    # occupancy 1/2 with capture ratio 0.1 and acceptor/donor ratio 5
    point = power_map(0.5, gaas_zeta01)
    assert point.xi == pytest.approx(0.1, rel=1e-12)
    assert point.free_density == pytest.approx(
        (11.0 / 90.0) * gaas_zeta01.acceptor_density, rel=1e-12)
    # compact (donor-dilute) power law vs the full balance
    assert power_closed_form(0.5, gaas_zeta01) / point.p0 == pytest.approx(
        100.0 / 81.0, rel=1e-12)
    assert point.power / point.p0 == pytest.approx(110.0 / 81.0, rel=1e-12)


def test_power_limits(gaas):
    small = power_map(1e-8, gaas)
    assert small.power / small.p0 < 1e-6
    assert 2.4e6 / 3.0 <= power_scale(gaas) <= 2.4e6 * 3.0
    with pytest.raises(MaterialError, match="ceiling"):
        power_map(gamma_ceiling(gaas) + 1e-6, gaas)


def test_power_balance_residuals(gaas):
    for gamma_t in (0.1, 0.45, 0.8):
        res = balance_residuals(gamma_t, gaas)
        assert res["trapping"] <= 1e-8
        assert res["generation"] <= 1e-8


def test_power_monotone_and_invertible(gaas):
    grid = np.linspace(1e-3, gamma_ceiling(gaas) * 0.999, 200)
    powers = np.array([power_map(g, gaas).power for g in grid])
    assert np.all(np.diff(powers) > 0.0)
    for gamma_t in (0.05, 0.5, 0.85):
        power = power_map(gamma_t, gaas).power
        assert invert_power(power, gaas) == pytest.approx(gamma_t, abs=1e-9)
    assert invert_power(1e9 * power_scale(gaas), gaas) == pytest.approx(
        gamma_ceiling(gaas), abs=1e-4)
    with pytest.raises(MaterialError):
        invert_power(0.0, gaas)


def test_invert_power_survives_extreme_inputs(gaas):
    # near the capture ceiling the occupancy saturates at machine
    # resolution; the result must stay strictly below the ceiling so the
    # forward map remains evaluable
    for factor in (1e6, 1e15, 1e30):
        gamma_t = invert_power(factor * power_scale(gaas), gaas)
        assert gamma_t < gamma_ceiling(gaas)
        assert power_map(gamma_t, gaas).power > 0.0


def test_reference_power_inverts_to_half(gaas_zeta01):
    power = (110.0 / 81.0) * power_scale(gaas_zeta01)
    assert invert_power(power, gaas_zeta01) == pytest.approx(0.5, abs=1e-9)


def test_diffusion_threshold_constant():
    assert GAMMA_MIN_DIFFUSION == 0.15
