"""Verification suites: exact oracles, Monte Carlo, reference numbers, properties.

Four independent batteries guard the package:

* ``exact-oracles``   -- every closed form against its brute-force
  counterpart (matrix traces, tensor rotations, quadratures, matrix
  exponentials, balance residuals) at tolerances 1e-8 .. 1e-10.
* ``telegraph-mc``    -- the stochastic telegraph simulator against the
  exact correlation function.
* ``reference-numbers``   -- the GaAs reference values (radii, ratios,
  field scales) at their documented tolerance windows.
* ``properties``      -- monotonicity, positivity, normalization and
  power-law identities.

Each check returns a result record; the command-line ``verify`` command
prints one line per check and fails the process when any check fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy.integrate import quad

from . import fields, kinetics, polarization, relaxation, spin_algebra, validity
from .materials import get_material, load_registry


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str


Check = tuple[str, Callable[[], tuple[bool, str]]]


def _run(suite: str, checks: Iterable[Check]) -> list[CheckResult]:
    results = []
    for name, func in checks:
        try:
            ok, detail = func()
        except Exception as exc:  # noqa: BLE001 - a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(suite=suite, name=name, ok=ok, detail=detail))
    return results


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


# --------------------------------------------------------------------------
# exact oracles
# --------------------------------------------------------------------------

_SPINS = (0.5, 1.5, 2.5, 4.5)


def _check_k_factors() -> tuple[bool, str]:
    thetas = np.linspace(0.0, math.pi, 32)
    worst = 0.0
    for spin in _SPINS:
        for theta in thetas:
            for k in (1, 2):
                f = spin_algebra.angular_factor(k, float(theta), spin)
                if spin < 1.0:
                    worst = max(worst, abs(f.trace_value), abs(f.analytic_value))
                else:
                    worst = max(worst, _rel(f.trace_value, f.analytic_value))
    return worst <= 1e-10, f"max deviation {worst:.2e} (tol 1e-10)"


def _check_iz_traces() -> tuple[bool, str]:
    worst = 0.0
    for spin in _SPINS:
        ops = spin_algebra.build_spin_operators(spin)
        iz2 = float(np.trace(ops.iz @ ops.iz).real)
        iz4 = float(np.trace(ops.iz @ ops.iz @ ops.iz @ ops.iz).real)
        worst = max(worst, _rel(iz2, spin_algebra.trace_iz2(spin)),
                    _rel(iz4, spin_algebra.trace_iz4(spin)))
    return worst <= 1e-12, f"max rel deviation {worst:.2e} (tol 1e-12)"


def _check_redfield() -> tuple[bool, str]:
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(24):
        spin = float(rng.choice([1.0, 1.5, 2.5, 4.5]))
        theta = float(rng.uniform(0.0, math.pi))
        j1, j2 = rng.uniform(0.1, 10.0, size=2) * 1e-9
        sup = spin_algebra.redfield_rate(spin, theta, j1, j2)
        ana = spin_algebra.redfield_rate_analytic(spin, theta, j1, j2)
        worst = max(worst, _rel(sup, ana))
    half = spin_algebra.redfield_rate(0.5, 1.0, 1e-9, 1e-9)
    ok = worst <= 1e-8 and abs(half) < 1e-30
    return ok, f"max rel deviation {worst:.2e} (tol 1e-8), spin-1/2 rate {half:.1e}"


def _check_efg_rotation() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    r14 = 3.2e12
    worst = 0.0
    for _ in range(100):
        geo = fields.Geometry(theta=float(rng.uniform(0, math.pi)),
                              phi=float(rng.uniform(0, 2 * math.pi)),
                              theta_b=float(rng.uniform(0, math.pi)),
                              phi_b=float(rng.uniform(0, 2 * math.pi)))
        e_vec = rng.normal(size=3) * 1e6
        closed = fields.efg_transform(e_vec, geo, r14)
        oracle = fields.efg_rotation_oracle(e_vec, geo, r14)
        scale = max(max(abs(c) for c in closed), 1e-300)
        worst = max(worst, max(abs(c - o) for c, o in zip(closed, oracle)) / scale)
    # surface-normal special case: only the three cross components survive
    theta, phi, e_mag = 0.77, 1.23, 2.5e6
    geo0 = fields.Geometry(theta=theta, phi=phi)
    v = fields.efg_transform(e_mag * fields.field_direction(theta, phi), geo0, r14)
    expect = (r14 * e_mag * math.cos(theta),
              r14 * e_mag * math.sin(theta) * math.cos(phi),
              r14 * e_mag * math.sin(theta) * math.sin(phi))
    special = max(_rel(v.xy, expect[0]), _rel(v.yz, expect[1]), _rel(v.xz, expect[2]),
                  abs(v.xx) / (r14 * e_mag), abs(v.yy) / (r14 * e_mag),
                  abs(v.zz) / (r14 * e_mag))
    ok = worst <= 1e-10 and special <= 1e-12
    return ok, f"rotation max rel {worst:.2e} (tol 1e-10), axial case {special:.2e}"


def _check_sphere_average() -> tuple[bool, str]:
    worst = 0.0
    for r in (0.05, 0.1, 0.35, 0.5, 1.0, 2.0, 5.0):
        for f0 in (1e-4, 1e-3, 1e-2, 1e-1, 1.0):
            closed = polarization.p_avg(r, f0)
            numeric = polarization.p_avg_quadrature(r, f0)
            worst = max(worst, abs(closed - numeric))
    return worst <= 1e-9, f"max |closed - quadrature| {worst:.2e} (tol 1e-9)"


def _check_telegraph_conditionals() -> tuple[bool, str]:
    worst_p = 0.0
    worst_g = 0.0
    s = 0.3233235838169365
    for occ in (0.2, 0.5, 0.8):
        tau_occ = 1.3e-9
        tau_empty = tau_occ * (1.0 - occ) / occ
        amplitude = kinetics.telegraph_amplitude(occ, s)
        for tau in (0.0, 0.3e-9, 1.1e-9, 5.0e-9):
            closed = kinetics.telegraph_p_matrix(tau, tau_occ, tau_empty)
            oracle = kinetics.telegraph_p_matrix_expm(tau, tau_occ, tau_empty)
            worst_p = max(worst_p, float(np.abs(closed - oracle).max()))
            g = kinetics.telegraph_correlation(tau, occ, s, tau_occ, tau_empty)
            recon = kinetics.correlation_from_conditionals(tau, occ, s, tau_occ, tau_empty)
            # deviation measured against the zero-lag amplitude so deep in
            # the exponential tail rounding noise does not dominate
            worst_g = max(worst_g, abs(g.g_analytic - recon) / amplitude)
    ok = worst_p <= 1e-12 and worst_g <= 1e-12
    return ok, f"P vs expm {worst_p:.2e}, correlation reconstruction {worst_g:.2e} (tol 1e-12)"


def _check_screening_cdf() -> tuple[bool, str]:
    worst = 0.0
    for r in (0.1, 0.25, 0.5, 1.0, 1.7, 3.0, 6.0):
        integral, _ = quad(fields.screening_density, 0.0, r,
                           epsabs=1e-13, epsrel=1e-13)
        worst = max(worst, abs(integral - fields.screening_fraction(r)))
    return worst <= 1e-10, f"max |CDF - closed| {worst:.2e} (tol 1e-10)"


def _check_power_balance() -> tuple[bool, str]:
    mat = get_material("GaAs:As75")
    worst_res = 0.0
    worst_rt = 0.0
    for gamma_t in (0.05, 0.2, 0.5, 0.8, 0.9):
        res = kinetics.balance_residuals(gamma_t, mat)
        worst_res = max(worst_res, res["trapping"], res["generation"])
        power = kinetics.power_map(gamma_t, mat).power
        worst_rt = max(worst_rt, abs(kinetics.invert_power(power, mat) - gamma_t))
    ok = worst_res <= 1e-8 and worst_rt <= 1e-9
    return ok, f"balance residual {worst_res:.2e} (tol 1e-8), round trip {worst_rt:.2e} (tol 1e-9)"


def _check_spectral_density() -> tuple[bool, str]:
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(12):
        tau_c = float(rng.uniform(0.1, 10.0)) * 1e-9
        omega = float(rng.uniform(0.0, 5.0)) / tau_c
        closed = kinetics.spectral_density(omega, 1.7, tau_c)
        numeric = kinetics.spectral_density_quadrature(omega, 1.7, tau_c)
        worst = max(worst, _rel(closed, numeric))
    return worst <= 1e-8, f"max rel deviation {worst:.2e} (tol 1e-8)"


def _check_local_field_trace() -> tuple[bool, str]:
    mat = get_material("GaAs:As75")
    worst = 0.0
    for spin in (1.0, 1.5, 2.5, 4.5):
        probe = mat.with_overrides(
            spin=spin,
            b_q=spin_algebra.E_CHARGE * mat.r14 * mat.quadrupole_moment
            / (4.0 * spin_algebra.HBAR * mat.gamma * spin * (2.0 * spin - 1.0)),
        )
        for theta in (0.0, 0.4, 1.1, math.pi / 2):
            res = spin_algebra.bq_local_field(
                0.5, 0.3, fields.Geometry(theta=theta, phi=0.9), probe)
            worst = max(worst, _rel(res.analytic, res.trace_oracle))
    return worst <= 1e-10, f"max rel deviation {worst:.2e} (tol 1e-10)"


def _check_hamiltonian_forms() -> tuple[bool, str]:
    mat = get_material("GaAs:As75")
    rng = np.random.default_rng(11)
    worst_equiv = 0.0
    worst_herm = 0.0
    worst_trace = 0.0
    point = fields.donor_field(0.7, 0.0, mat)
    f0q_exact = (spin_algebra.E_CHARGE * mat.r14 * mat.quadrupole_moment
                 / (4.0 * mat.spin * (2.0 * mat.spin - 1.0))) * point.e_off
    for _ in range(20):
        theta = float(rng.uniform(0, math.pi))
        phi = float(rng.uniform(0, 2 * math.pi))
        geo = fields.Geometry(theta=theta, phi=phi,
                              theta_b=float(rng.uniform(0, math.pi)),
                              phi_b=float(rng.uniform(0, 2 * math.pi)))
        e_vec = point.e_off * fields.field_direction(theta, phi)
        h = spin_algebra.build_hq_general(e_vec, geo, mat)
        scale = max(float(np.abs(h).max()), 1e-300)
        worst_herm = max(worst_herm, float(np.abs(h - h.conj().T).max()) / scale)
        worst_trace = max(worst_trace, abs(np.trace(h)) / scale)
        axial = spin_algebra.build_hq_axial(
            f0q_exact, theta, phi, mat.spin)
        h0 = spin_algebra.build_hq_general(
            e_vec, fields.Geometry(theta=theta, phi=phi), mat)
        worst_equiv = max(worst_equiv, float(np.abs(h0 - axial).max()) / scale)
    # the spectrum cannot depend on the quantization-frame orientation
    worst_frame = 0.0
    e_fixed = rng.normal(size=3) * 1e6
    reference = None
    for _ in range(8):
        geo = fields.Geometry(theta_b=float(rng.uniform(0, math.pi)),
                              phi_b=float(rng.uniform(0, 2 * math.pi)))
        eigs = np.linalg.eigvalsh(spin_algebra.build_hq_general(e_fixed, geo, mat))
        if reference is None:
            reference = eigs
        else:
            worst_frame = max(worst_frame, float(np.abs(eigs - reference).max())
                              / float(np.abs(reference).max()))
    ok = worst_equiv <= 1e-10 and worst_herm <= 1e-12 and worst_trace <= 1e-12 \
        and worst_frame <= 1e-10
    return ok, (f"axial equivalence {worst_equiv:.2e}, hermiticity {worst_herm:.2e}, "
                f"trace {worst_trace:.2e}, frame invariance {worst_frame:.2e}")


def _check_level_shift() -> tuple[bool, str]:
    mat = get_material("GaAs:As75")
    shift = spin_algebra.level_shift(1.5, 1.0, 0.5, fields.Geometry(theta=0.0),
                                     0.0, mat)
    rel = _rel(shift.analytic, shift.numeric)
    # the perturbative error bound guarantees the residual shrinks at
    # least like B^-2 (ratio >= 4 per field doubling, up to noise); in
    # practice the third-order term cancels for this coupling family and
    # the observed decay is B^-3
    geo = fields.Geometry(theta=0.7, phi=0.3)
    residuals = []
    for b in (0.05, 0.1, 0.2, 0.4):
        s = spin_algebra.level_shift(1.5, b, 0.5, geo, 0.0, mat)
        residuals.append(abs(s.analytic - s.numeric))
    ratios = [residuals[i] / residuals[i + 1] for i in range(3)]
    ok = rel <= 0.01 and all(q >= 3.5 for q in ratios)
    return ok, f"1 T deviation {rel:.2e} (tol 1e-2); B-doubling ratios {ratios}"


def exact_oracle_suite() -> list[CheckResult]:
    return _run("exact-oracles", [
        ("k-factor-traces", _check_k_factors),
        ("iz-moment-traces", _check_iz_traces),
        ("redfield-superoperator", _check_redfield),
        ("efg-rotation", _check_efg_rotation),
        ("sphere-average", _check_sphere_average),
        ("telegraph-conditionals", _check_telegraph_conditionals),
        ("screening-cdf", _check_screening_cdf),
        ("power-balance", _check_power_balance),
        ("spectral-density", _check_spectral_density),
        ("local-field-trace", _check_local_field_trace),
        ("hamiltonian-forms", _check_hamiltonian_forms),
        ("level-shift-oracle", _check_level_shift),
    ])


# --------------------------------------------------------------------------
# Monte Carlo telegraph
# --------------------------------------------------------------------------

def telegraph_mc_suite(seed: int = 20260810, n_dwell: int = 1_000_000) -> list[CheckResult]:
    s = 0.3233235838169365

    def run_mc() -> tuple[bool, str]:
        occ, tau_occ, tau_empty = 0.5, 1.0, 1.0
        est = kinetics.simulate_telegraph(occ, s, tau_occ, tau_empty,
                                          n_dwell=n_dwell, seed=seed)
        exact_rate = 1.0 / tau_occ + 1.0 / tau_empty
        exact_amp = kinetics.telegraph_amplitude(occ, s)
        rate_err = abs(est.decay_rate - exact_rate) / exact_rate
        amp_dev = abs(est.amplitude - exact_amp)
        amp_ok = amp_dev <= 3.0 * est.acf_se[0] + 1e-12
        mean_ok = abs(est.mean) <= 3.0 * est.mean_se
        lags_ok = True
        for k, lag in enumerate(est.lag_times):
            expect = exact_amp * math.exp(-exact_rate * lag)
            if abs(est.acf[k] - expect) > 3.0 * est.acf_se[k] + 1e-12:
                lags_ok = False
        ok = rate_err <= 0.05 and amp_ok and mean_ok and lags_ok
        return ok, (f"decay rel err {rate_err:.4f} (tol 0.05), amplitude dev "
                    f"{amp_dev:.2e}, mean {est.mean:.2e} +- {est.mean_se:.2e}, "
                    f"all lags within 3 sigma: {lags_ok}")

    def run_mc_asym() -> tuple[bool, str]:
        occ = 0.25
        est = kinetics.simulate_telegraph(occ, s, 1.0, 3.0,
                                          n_dwell=max(n_dwell // 5, 10_000), seed=seed + 1)
        exact_rate = 1.0 + 1.0 / 3.0
        exact_amp = kinetics.telegraph_amplitude(occ, s)
        rate_err = abs(est.decay_rate - exact_rate) / exact_rate
        amp_ok = abs(est.amplitude - exact_amp) <= 3.0 * est.acf_se[0] + 1e-12
        ok = rate_err <= 0.05 and amp_ok
        return ok, f"decay rel err {rate_err:.4f}, amplitude within 3 sigma: {amp_ok}"

    return _run("telegraph-mc", [
        ("symmetric-dwell", run_mc),
        ("asymmetric-dwell", run_mc_asym),
    ])


# --------------------------------------------------------------------------
# reference numbers (GaAs defaults)
# --------------------------------------------------------------------------

def _within(value: float, lo: float, hi: float, label: str) -> tuple[bool, str]:
    return lo <= value <= hi, f"{label} = {value:.6g} (window [{lo:.6g}, {hi:.6g}])"


def reference_number_suite() -> list[CheckResult]:
    mat = get_material("GaAs:As75")

    def screening_at_bohr() -> tuple[bool, str]:
        s1 = fields.screening_fraction(1.0)
        return abs(s1 - 0.323) <= 0.01, f"s(a0*) = {s1:.6f} (target 0.323 +- 0.01)"

    def competition_floor() -> tuple[bool, str]:
        return _within(relaxation.intrinsic_ratio(mat), 1e-3, 4e-3, "f00")

    def competition_amplitude() -> tuple[bool, str]:
        f0 = relaxation.intrinsic_ratio(mat) / 0.25
        return _within(f0, 5e-3, 2e-2, "f0 at half occupancy")

    def ratio_perpendicular() -> tuple[bool, str]:
        f = 1e-2 * relaxation.radial_profile(1.0)
        return _within(f, 0.07, 0.13, "f(a0*, pi/2) at f0=1e-2")

    def ratio_parallel() -> tuple[bool, str]:
        f = 1e-2 * relaxation.radial_profile(1.0) / 4.0
        return _within(f, 0.017, 0.033, "f(a0*, 0) at f0=1e-2")

    def half_radius_parallel() -> tuple[bool, str]:
        r = polarization.half_polarization_radius(0.0, 1e-2)
        return _within(r, 0.22, 0.28, "half-polarization radius, parallel")

    def half_radius_perpendicular() -> tuple[bool, str]:
        r = polarization.half_polarization_radius(math.pi / 2.0, 1e-2)
        return _within(r, 0.42, 0.48, "half-polarization radius, perpendicular")

    def quadrupolar_radius_value() -> tuple[bool, str]:
        rho = polarization.quadrupolar_radius(1e-2)
        return _within(rho, 0.34, 0.36, "quadrupolar radius at f0=1e-2")

    def screening_at_radius() -> tuple[bool, str]:
        rho = polarization.quadrupolar_radius(1e-2)
        return _within(fields.screening_fraction(rho), 0.029, 0.039, "s(rho_q)")

    def radius_sweep_monotone() -> tuple[bool, str]:
        table = polarization.radius_sweep(np.geomspace(1e-4, 1.0, 25))
        rho_up = bool(np.all(np.diff(table[:, 1]) > 0.0))
        s_up = bool(np.all(np.diff(table[:, 2]) > 0.0))
        return rho_up and s_up, f"rho_q increasing: {rho_up}, s(rho_q) increasing: {s_up}"

    def diffusion_calibration() -> tuple[bool, str]:
        state = kinetics.state_for_occupancy(0.5, mat)
        d = polarization.calibrate_diffusion(state, 0.1, mat)
        root = polarization.diffusion_radius(state, 0.1, d, mat,
                                             include_quadrupolar=False)
        ok = root.has_solution and abs(root.value - 1.4) <= 1e-5
        return ok, f"no-quadrupolar balance radius = {root.value} (calibrated target 1.4)"

    def diffusion_quad_modified() -> tuple[bool, str]:
        state = kinetics.state_for_occupancy(0.5, mat)
        d = polarization.calibrate_diffusion(state, 0.1, mat)
        root = polarization.diffusion_radius(state, 0.1, d, mat, f0=1e-2)
        value = root.value if root.has_solution else float("nan")
        ok = root.has_solution and 0.85 <= value <= 1.15
        return ok, (f"quadrupolar-modified balance radius = {value:.4g} a0* "
                    "(window [0.85, 1.15]; the added quadrupolar rate can only "
                    "push the outermost crossing outward, so the published "
                    "~1.0 a0* is not reproducible from this balance)")

    def field_reduction_ratio() -> tuple[bool, str]:
        rho_q = polarization.quadrupolar_radius(1e-2)
        ratio = fields.screening_fraction(1.4) / fields.screening_fraction(rho_q)
        return _within(ratio, 10.0, 20.0, "s(rho_d)/s(rho_q)")

    def sweep_checks() -> list[Check]:
        sweep = polarization.power_sweep(np.geomspace(0.1, 100.0, 31), mat)
        i0 = int(np.argmin(np.abs(sweep.p_over_p0 - 1.0)))

        def occupancy_at_p0() -> tuple[bool, str]:
            return _within(sweep.occupancy[i0], 0.4, 0.6, "occupancy at P0")

        def dip_factor() -> tuple[bool, str]:
            dip = 0.5 / sweep.s_rho_q[i0]
            return _within(dip, 13.0, 30.0, "reduction factor 0.5/s(rho_q) at P0")

        def tail_decreasing() -> tuple[bool, str]:
            tail = sweep.alpha_n[sweep.p_over_p0 >= 2.0]
            ok = bool(np.all(np.diff(tail) < 0.0))
            return ok, f"alpha_n strictly decreasing over {tail.size} high-power points"

        return [("sweep-occupancy-at-p0", occupancy_at_p0),
                ("sweep-dip-factor", dip_factor),
                ("sweep-tail-decreasing", tail_decreasing)]

    def power_scale_value() -> tuple[bool, str]:
        return _within(kinetics.power_scale(mat), 2.4e6 / 3.0, 2.4e6 * 3.0,
                       "P0 (W/m^2)")

    def quadrupolar_local_field() -> tuple[bool, str]:
        b_q = spin_algebra.bq_local_field(0.5, 0.0, fields.Geometry(), mat).analytic
        return _within(b_q, 1.6e-3 / 3.0, 1.6e-3 * 3.0, "B_Q(0.5 a0*, occ 0)")

    def spin_temperature_eta() -> tuple[bool, str]:
        eta = validity.spin_temperature_eta(mat)
        return _within(eta, 1.5e-9, 4.5e-9, "eta (m T^1/5)")

    def threshold_half_bohr() -> tuple[bool, str]:
        eta = validity.spin_temperature_eta(mat)
        b = validity.field_threshold(mat.bohr_radius / 2.0, eta)
        return _within(b, 0.045, 0.18, "field threshold at a0*/2")

    def radius_at_third_threshold() -> tuple[bool, str]:
        eta = validity.spin_temperature_eta(mat)
        b = validity.field_threshold(mat.bohr_radius / 2.0, eta) / 3.0
        r = validity.spin_temperature_limit(b, mat).r_q / mat.bohr_radius
        return _within(r, 0.45, 0.75, "spin-temperature radius at threshold/3")

    def narrowing_crossover() -> tuple[bool, str]:
        state = kinetics.occupancy(1e21, mat)
        b_star = 1.0 / (mat.gamma_e * state.tau_hyper)
        return _within(b_star, 20.0 / 3.0, 60.0, "B with omega_H tau_H = 1")

    def coupling_table() -> tuple[bool, str]:
        worst = 0.0
        for record in load_registry().values():
            worst = max(worst, abs(record.bq_recomputed() - record.b_q) / record.b_q)
        return worst <= 0.10, f"worst b_q round-trip deviation {worst:.2%} (tol 10%)"

    checks: list[Check] = [
        ("screening-at-bohr", screening_at_bohr),
        ("competition-floor", competition_floor),
        ("competition-amplitude", competition_amplitude),
        ("ratio-at-bohr-perpendicular", ratio_perpendicular),
        ("ratio-at-bohr-parallel", ratio_parallel),
        ("half-radius-parallel", half_radius_parallel),
        ("half-radius-perpendicular", half_radius_perpendicular),
        ("quadrupolar-radius", quadrupolar_radius_value),
        ("screening-at-radius", screening_at_radius),
        ("radius-sweep-monotone", radius_sweep_monotone),
        ("diffusion-calibration", diffusion_calibration),
        ("diffusion-quad-modified", diffusion_quad_modified),
        ("field-reduction-ratio", field_reduction_ratio),
    ]
    checks.extend(sweep_checks())
    checks.extend([
        ("power-scale", power_scale_value),
        ("quadrupolar-local-field", quadrupolar_local_field),
        ("spin-temperature-eta", spin_temperature_eta),
        ("threshold-at-half-bohr", threshold_half_bohr),
        ("radius-at-third-threshold", radius_at_third_threshold),
        ("narrowing-crossover", narrowing_crossover),
        ("coupling-table", coupling_table),
    ])
    return _run("reference-numbers", checks)


#: checks that document known discrepancies; they stay red on purpose and
#: carry the explanation in their detail string
EXPECTED_FAILURES = {("reference-numbers", "diffusion-quad-modified")}


# --------------------------------------------------------------------------
# properties
# --------------------------------------------------------------------------

def property_suite(seed: int = 20260810) -> list[CheckResult]:
    mat = get_material("GaAs:As75")

    def radial_factor_monotone() -> tuple[bool, str]:
        grid = np.linspace(1e-3, 8.0, 10_000)
        values = np.array([relaxation.radial_profile(r) for r in grid])
        ok = bool(np.all(np.diff(values) < 0.0))
        return ok, f"strictly decreasing over {grid.size} points on (0, 8]"

    def power_map_monotone() -> tuple[bool, str]:
        ceiling = kinetics.gamma_ceiling(mat)
        grid = np.linspace(1e-4, ceiling * 0.9999, 400)
        powers = np.array([kinetics.power_map(g, mat).power for g in grid])
        ok = bool(np.all(np.diff(powers) > 0.0))
        return ok, f"strictly increasing over {grid.size} occupancies"

    def correlation_shape() -> tuple[bool, str]:
        s = 0.3233235838169365
        positive = np.linspace(0.25e-9, 5e-9, 20)
        ok = True
        for occ in (0.2, 0.5, 0.9):
            tau_occ = 1e-9
            tau_empty = tau_occ * (1 - occ) / occ

            def g_of(t: float) -> float:
                return kinetics.telegraph_correlation(t, occ, s, tau_occ,
                                                      tau_empty).g_analytic

            g0 = g_of(0.0)
            for t in positive:
                plus, minus = g_of(float(t)), g_of(float(-t))
                ok &= plus >= 0.0 and plus == minus and plus < g0
        zero = kinetics.telegraph_amplitude(0.0, 0.5) == 0.0 \
            and kinetics.telegraph_amplitude(1.0, 0.5) == 0.0
        return ok and zero, "non-negative, even, maximal at zero lag; off at occ 0 and 1"

    def hyperfine_amplitude() -> tuple[bool, str]:
        values = [kinetics.hyperfine_correlation_amplitude(g) for g in (0.0, 0.5, 1.0)]
        ok = values == [0.0, 0.5, 1.0]
        return ok, f"g_H(0) at occ (0, 0.5, 1) = {values}"

    def efg_shape() -> tuple[bool, str]:
        rng = np.random.default_rng(seed)
        worst_trace = 0.0
        worst_sym = 0.0
        for _ in range(50):
            geo = fields.Geometry(theta=float(rng.uniform(0, math.pi)),
                                  phi=float(rng.uniform(0, 2 * math.pi)),
                                  theta_b=float(rng.uniform(0, math.pi)),
                                  phi_b=float(rng.uniform(0, 2 * math.pi)))
            e_vec = rng.normal(size=3) * 1e6
            v = fields.efg_transform(e_vec, geo, mat.r14)
            scale = max(max(abs(c) for c in v), 1e-300)
            worst_trace = max(worst_trace, abs(v.xx + v.yy + v.zz) / scale)
            # full-matrix congruence stays symmetric under the frame change
            rot = fields.rotation_to_field_frame(geo.theta_b, geo.phi_b)
            full = rot @ fields.efg_crystal_frame(e_vec, mat.r14) @ rot.T
            worst_sym = max(worst_sym, float(np.abs(full - full.T).max()) / scale)
        ok = worst_trace <= 1e-12 and worst_sym <= 1e-12
        return ok, (f"traceless to {worst_trace:.2e}, symmetric to {worst_sym:.2e} "
                    "over 50 random geometries")

    def field_normalization() -> tuple[bool, str]:
        weight, _ = quad(fields.screening_density, 0.0,
                         polarization.FIELD_INTEGRAL_UPPER,
                         epsabs=1e-12, epsrel=1e-12)
        return abs(weight - 1.0) <= 2e-8, \
            f"orbital weight integrates to {weight:.10f} (fully polarized halo bound)"

    def eta_power_law() -> tuple[bool, str]:
        eta = validity.spin_temperature_eta(mat)
        worst = 0.0
        for b in np.geomspace(1e-3, 10.0, 9):
            r_q = validity.spin_temperature_limit(float(b), mat).r_q
            worst = max(worst, abs(r_q * b ** 0.2 - eta) / eta)
        return worst <= 1e-6, f"r_q B^(1/5) constant to {worst:.2e} (tol 1e-6)"

    def threshold_inverse() -> tuple[bool, str]:
        eta = validity.spin_temperature_eta(mat)
        worst = 0.0
        for b in np.geomspace(1e-3, 10.0, 9):
            r_q = validity.spin_temperature_limit(float(b), mat).r_q
            worst = max(worst, abs(validity.field_threshold(r_q, eta) - b) / b)
        return worst <= 1e-10, f"threshold(radius(B)) = B to {worst:.2e}"

    def shift_difference_slope() -> tuple[bool, str]:
        # nearest-neighbor shift difference falls off as r^-5 far out
        geo = fields.Geometry(theta=0.0)
        radii = np.geomspace(2.0, 8.0, 12)
        diffs = []
        for r in radii:
            d_bohr = mat.neighbor_spacing / mat.bohr_radius
            a = spin_algebra.level_shift(mat.spin, 1.0, float(r), geo, 0.0, mat).analytic
            b = spin_algebra.level_shift(mat.spin, 1.0, float(r) + d_bohr, geo,
                                         0.0, mat).analytic
            diffs.append(abs(a - b))
        slope = np.polyfit(np.log(radii), np.log(diffs), 1)[0]
        return abs(slope + 5.0) <= 0.1, f"log-log slope {slope:.4f} (target -5 +- 2%)"

    def profile_ordering() -> tuple[bool, str]:
        prof = polarization.profile(1e-2, np.linspace(0.05, 4.0, 120))
        ok = bool(np.all(prof.p_parallel <= prof.p_perpendicular + 1e-15))
        ok &= bool(np.all(prof.p_avg <= prof.p_perpendicular + 1e-12))
        ok &= bool(np.all(prof.p_avg >= prof.p_parallel - 1e-12))
        for arr in (prof.p_parallel, prof.p_perpendicular, prof.p_avg):
            ok &= bool(np.all(np.diff(arr) < 0.0))
        return ok, "parallel <= average <= perpendicular, all strictly decreasing"

    def mc_convergence() -> tuple[bool, str]:
        s = 0.3233235838169365
        exact = kinetics.telegraph_amplitude(0.25, s)
        errs = {}
        for n in (16_000, 256_000):
            runs = [kinetics.simulate_telegraph(0.25, s, 1.0, 3.0, n_dwell=n,
                                                seed=seed + k).amplitude
                    for k in range(8)]
            errs[n] = float(np.mean([abs(a - exact) for a in runs]))
        ratio = errs[256_000] / errs[16_000]
        ok = 0.15 <= ratio <= 0.6      # ideal 1/4 for a 16x sample increase
        return ok, f"mean abs error ratio (16x dwells) = {ratio:.3f} (window [0.15, 0.6])"

    return _run("properties", [
        ("radial-factor-monotone", radial_factor_monotone),
        ("power-map-monotone", power_map_monotone),
        ("correlation-shape", correlation_shape),
        ("hyperfine-amplitude", hyperfine_amplitude),
        ("efg-traceless", efg_shape),
        ("field-normalization", field_normalization),
        ("eta-power-law", eta_power_law),
        ("threshold-inverse", threshold_inverse),
        ("shift-difference-slope", shift_difference_slope),
        ("profile-ordering", profile_ordering),
        ("mc-convergence", mc_convergence),
    ])


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "exact-oracles": lambda seed, n_dwell: exact_oracle_suite(),
    "telegraph-mc": lambda seed, n_dwell: telegraph_mc_suite(seed, n_dwell),
    "reference-numbers": lambda seed, n_dwell: reference_number_suite(),
    "properties": lambda seed, n_dwell: property_suite(seed),
}


def run_suites(names: Iterable[str] | None = None, seed: int = 20260810,
               n_dwell: int = 1_000_000) -> list[CheckResult]:
    selected = list(names) if names is not None else list(SUITES)
    results: list[CheckResult] = []
    for name in selected:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        results.extend(SUITES[name](seed, n_dwell))
    return results
