import math

import numpy as np
import pytest

from donor_halo import (BracketError, MaterialError, calibrate_diffusion,
                        diffusion_radius, half_polarization_radius, nuclear_field,
                        p_avg, p_point, power_sweep, profile, quadrupolar_radius,
                        radius_sweep, screening_fraction, state_for_occupancy)
from donor_halo.kinetics import power_scale
from donor_halo.polarization import (FIELD_INTEGRAL_UPPER, RHO_D_REFERENCE,
                                     angular_average, p_avg_quadrature)
from donor_halo.relaxation import radial_profile


def test_p_point_limits():
    assert p_point(1e-3, 0.7, 1e-2) > 0.999
    assert p_point(8.0, 0.7, 1e-2) < 1e-6
    with pytest.raises(MaterialError):
        p_point(0.0, 0.0, 1e-2)


def test_half_polarization_radii():
    r_par = half_polarization_radius(0.0, 1e-2)
    r_perp = half_polarization_radius(math.pi / 2.0, 1e-2)
    assert abs(r_par - 0.25) <= 0.03
    assert abs(r_perp - 0.45) <= 0.03
    assert p_point(r_par, 0.0, 1e-2) == pytest.approx(0.5, abs=1e-5)
    assert p_point(r_perp, math.pi / 2.0, 1e-2) == pytest.approx(0.5, abs=1e-5)


def test_sphere_average_against_quadrature():
    for r in (0.05, 0.2, 0.35, 0.8, 1.5, 4.0):
        for f0 in (1e-4, 1e-3, 1e-2, 1e-1, 1.0):
            pair = angular_average(r, f0)
            assert abs(pair.closed_form - pair.quadrature) <= 1e-9


def test_sphere_average_reference_point():
    # radial amplitude a = f0 * phi(0.35) = 1.7333 gives the half-crossing zone
    assert 1e-2 * radial_profile(0.35) == pytest.approx(1.7333, abs=2e-4)
    value = p_avg(0.35, 1e-2)
    assert value == pytest.approx(0.4895, abs=2e-4)
    assert value == pytest.approx(p_avg_quadrature(0.35, 1e-2), abs=1e-12)


def test_sphere_average_limits():
    assert p_avg(1e-3, 1.0) > 0.999     # saturated close to the donor
    assert p_avg(8.0, 1e-4) < 1e-9      # vanishing far out


def test_quadrupolar_radius_reference():
    rho = quadrupolar_radius(1e-2)
    assert abs(rho - 0.35) <= 0.01
    assert p_avg(rho, 1e-2) == pytest.approx(0.5, abs=1e-5)
    assert abs(screening_fraction(rho) - 0.034) <= 0.005


def test_quadrupolar_radius_monotone():
    table = radius_sweep(np.geomspace(1e-4, 1.0, 21))
    assert np.all(np.diff(table[:, 1]) > 0.0)
    assert np.all(np.diff(table[:, 2]) > 0.0)


def test_quadrupolar_radius_no_bracket():
    with pytest.raises(BracketError):
        quadrupolar_radius(1e10)


def test_radius_sweep_single_point():
    table = radius_sweep(np.array([1e-2]))
    assert table.shape == (1, 3)
    assert table[0, 1] == pytest.approx(quadrupolar_radius(1e-2), abs=1e-9)


def test_profile_invariants():
    prof = profile(1e-2, np.linspace(0.05, 4.0, 80))
    assert np.all(prof.p_parallel <= prof.p_perpendicular + 1e-15)
    assert np.all(prof.p_avg <= prof.p_perpendicular + 1e-12)
    assert np.all(prof.p_avg >= prof.p_parallel - 1e-12)
    for series in (prof.p_parallel, prof.p_perpendicular, prof.p_avg):
        assert np.all((series > 0.0) & (series < 1.0))
        assert np.all(np.diff(series) < 0.0)
    assert prof.rho_q == pytest.approx(quadrupolar_radius(1e-2), abs=1e-9)


def test_profile_rejects_bad_grid():
    with pytest.raises(MaterialError):
        profile(1e-2, np.array([0.3, 0.2]))


def test_nuclear_field_step_and_exact(gaas):
    prof = profile(1e-2, np.linspace(0.05, 3.0, 40))
    field = nuclear_field(prof, gaas)
    assert field.b_n_step == pytest.approx(
        gaas.b_n0 * screening_fraction(prof.rho_q), rel=1e-12)
    # independent trapezoid oracle for the weighted integral
    grid = np.linspace(1e-6, FIELD_INTEGRAL_UPPER, 40_001)
    weight = 4.0 * grid ** 2 * np.exp(-2.0 * grid)
    averaged = np.array([p_avg(float(r), 1e-2) for r in grid])
    oracle = gaas.b_n0 * np.trapezoid(weight * averaged, grid)
    assert field.b_n_exact == pytest.approx(oracle, rel=1e-6)
    # the step model undercounts the slow tail of the averaged profile
    assert field.b_n_exact / field.b_n_step == pytest.approx(2.478, abs=0.01)


@pytest.mark.parametrize("f0,ratio", [(1e-3, 7.339), (1e-2, 2.478), (1e-1, 1.210)])
def test_nuclear_field_tail_ratio(gaas, f0, ratio):
    prof = profile(f0, np.linspace(0.1, 1.0, 4))
    field = nuclear_field(prof, gaas)
    assert field.b_n_exact / field.b_n_step == pytest.approx(ratio, abs=0.01)


def test_nuclear_field_diffusion_cap(gaas):
    prof = profile(1.0, np.linspace(0.1, 2.0, 8), rho_d=0.8)
    capped = nuclear_field(prof, gaas)
    assert prof.rho_q > 0.8
    assert capped.b_n_step == pytest.approx(
        gaas.b_n0 * screening_fraction(0.8), rel=1e-12)


def test_diffusion_radius_calibration(gaas):
    state = state_for_occupancy(0.5, gaas)
    d = calibrate_diffusion(state, 0.1, gaas)
    root = diffusion_radius(state, 0.1, d, gaas, include_quadrupolar=False)
    assert root.has_solution
    assert root.value == pytest.approx(RHO_D_REFERENCE, abs=1e-5)


def test_diffusion_radius_with_quadrupolar_channel(gaas):
    # the quadrupolar channel has a slow r^-4 tail, so the outermost
    # balance point moves far outward relative to the hyperfine-only 1.4
    state = state_for_occupancy(0.5, gaas)
    d = calibrate_diffusion(state, 0.1, gaas)
    root = diffusion_radius(state, 0.1, d, gaas, f0=1e-2)
    assert root.has_solution
    assert root.value == pytest.approx(22.48, abs=0.05)
    assert root.value > RHO_D_REFERENCE


def test_diffusion_radius_no_solution(gaas):
    state = state_for_occupancy(0.5, gaas)
    d = calibrate_diffusion(state, 0.1, gaas)
    swamped = diffusion_radius(state, 0.1, d * 1e6, gaas, include_quadrupolar=False)
    assert not swamped.has_solution
    assert swamped.value is None


def test_field_reduction_ratio(gaas):
    rho_q = quadrupolar_radius(1e-2)
    ratio = screening_fraction(RHO_D_REFERENCE) / screening_fraction(rho_q)
    assert 10.0 <= ratio <= 20.0


def test_power_sweep_structure(gaas):
    sweep = power_sweep(np.geomspace(0.1, 100.0, 31), gaas)
    assert np.all(np.diff(sweep.occupancy) > 0.0)
    assert np.all(sweep.alpha_n <= sweep.s_rho_q + 1e-15)
    assert np.all(sweep.diffusion_flag == (sweep.occupancy < 0.15))
    assert np.all(np.isfinite(sweep.alpha_n))
    i0 = int(np.argmin(np.abs(sweep.p_over_p0 - 1.0)))
    assert abs(sweep.occupancy[i0] - 0.5) <= 0.1
    dip = 0.5 / sweep.s_rho_q[i0]
    assert 13.0 <= dip <= 30.0
    tail = sweep.alpha_n[sweep.p_over_p0 >= 2.0]
    assert np.all(np.diff(tail) < 0.0)


def test_power_sweep_interior_minimum(gaas):
    sweep = power_sweep(np.geomspace(0.1, 100.0, 31), gaas)
    i0 = int(np.argmin(np.abs(sweep.p_over_p0 - 1.0)))
    i_low = int(np.argmin(np.abs(sweep.p_over_p0 - 0.2)))
    assert sweep.alpha_n[i0] < sweep.alpha_n[i_low]
    # without the quadrupolar channel the radius saturates at the
    # diffusion ceiling and the dip disappears
    ceiling = power_sweep(np.array([1.0]), gaas, quadrupolar=False)
    assert ceiling.s_rho_q[0] == pytest.approx(
        screening_fraction(RHO_D_REFERENCE), rel=1e-12)
    assert sweep.s_rho_q[i0] < ceiling.s_rho_q[0] / 10.0
    assert sweep.alpha_n[i0] < ceiling.alpha_n[0]


def test_power_sweep_reference_scale(gaas):
    assert 0.8e6 <= power_scale(gaas) <= 7.2e6
    with pytest.raises(MaterialError):
        power_sweep(np.array([-1.0]), gaas)
