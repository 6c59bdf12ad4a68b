"""Steady-state nuclear polarization profiles, radii, and field sweeps.

The local steady-state polarization is p = f/(1+f) with f the
hyperfine-to-quadrupolar rate ratio: close to the donor the modulated
field vanishes and nuclei stay fully polarized; further out the
quadrupolar channel wins and the polarization collapses.  The sphere
where the angular-averaged polarization crosses one half defines the
quadrupolar radius, which replaces the spin-diffusion radius in the
nuclear-field estimate.  The power sweep ties all of it to the
excitation power density.

Radial arguments are in units of the effective Bohr radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import BracketError, MaterialError
from .fields import Geometry, screening_density, screening_fraction
from .kinetics import (GAMMA_MIN_DIFFUSION, KineticState, invert_power,
                       power_map)
from .materials import MaterialRecord
from .relaxation import intrinsic_ratio, radial_profile, rates

#: no-quadrupolar spin-diffusion radius, in a0* units; the diffusion
#: constant is calibrated so the rate/diffusion balance crosses here
RHO_D_REFERENCE = 1.4


def p_point(r: float, theta: float, f0: float) -> float:
    """Normalized steady polarization at (r, theta) for ratio amplitude f0."""
    if r <= 0.0 or f0 <= 0.0:
        raise MaterialError("r and f0 must be positive")
    f = f0 * radial_profile(r) / (1.0 + 3.0 * math.cos(theta) ** 2)
    return f / (1.0 + f)


class AngularAverage(NamedTuple):
    closed_form: float
    quadrature: float


def p_avg(r: float, f0: float) -> float:
    """Sphere-averaged polarization, closed form.

    With a = f0 * phi(r) the average over the solid angle is
    a / sqrt(3 (1+a)) * arctan(sqrt(3 / (1+a))).
    """
    if r <= 0.0 or f0 <= 0.0:
        raise MaterialError("r and f0 must be positive")
    a = f0 * radial_profile(r)
    root = math.sqrt(1.0 + a)
    return a / (math.sqrt(3.0) * root) * math.atan(math.sqrt(3.0) / root)


def p_avg_quadrature(r: float, f0: float) -> float:
    """Adaptive-quadrature oracle for :func:`p_avg` (independent of it)."""
    a = f0 * radial_profile(r)

    def integrand(u: float) -> float:
        f = a / (1.0 + 3.0 * u * u)
        return f / (1.0 + f)

    value, _ = quad(integrand, -1.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    return 0.5 * value


def angular_average(r: float, f0: float) -> AngularAverage:
    """Closed form plus quadrature oracle, for verification surfaces."""
    return AngularAverage(closed_form=p_avg(r, f0),
                          quadrature=p_avg_quadrature(r, f0))


def _bisect(func: Callable[[float], float], lo: float, hi: float,
            tol: float, what: str, max_iter: int = 200) -> float:
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise BracketError(
            f"no sign change for {what} on [{lo}, {hi}]: "
            f"f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0.0 or (hi - lo) < tol:
            return mid
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def quadrupolar_radius(f0: float, bracket: tuple[float, float] = (1e-3, 8.0),
                       tol: float = 1e-6) -> float:
    """Radius where the sphere-averaged polarization crosses one half.

    Unique because the averaged polarization decreases monotonically
    with distance; found by bracketed bisection to tol (a0* units).
    """
    return _bisect(lambda r: p_avg(r, f0) - 0.5, bracket[0], bracket[1],
                   tol, "quadrupolar radius")


def half_polarization_radius(theta: float, f0: float,
                             bracket: tuple[float, float] = (1e-3, 8.0),
                             tol: float = 1e-6) -> float:
    """Radius where p(r, theta) crosses one half along a fixed direction."""
    return _bisect(lambda r: p_point(r, theta, f0) - 0.5, bracket[0], bracket[1],
                   tol, "half-polarization radius")


@dataclass(frozen=True)
class RadialProfile:
    """Sampled polarization profile plus the derived radii."""

    r_grid: np.ndarray
    p_parallel: np.ndarray        # theta = 0 (along the magnetic field)
    p_perpendicular: np.ndarray   # theta = pi/2
    p_avg: np.ndarray
    f0: float
    rho_q: float                  # a0* units
    s_at_rho_q: float
    rho_d: float | None = None    # a0* units, when a diffusion solve was done


def profile(f0: float, r_grid: np.ndarray, rho_d: float | None = None) -> RadialProfile:
    """Tabulate the three polarization curves on a radial grid."""
    grid = np.asarray(r_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0.0) \
            or grid[0] <= 0.0:
        raise MaterialError("r_grid must be 1-D, positive and strictly increasing")
    rho_q = quadrupolar_radius(f0)
    return RadialProfile(
        r_grid=grid,
        p_parallel=np.array([p_point(r, 0.0, f0) for r in grid]),
        p_perpendicular=np.array([p_point(r, math.pi / 2.0, f0) for r in grid]),
        p_avg=np.array([p_avg(r, f0) for r in grid]),
        f0=f0,
        rho_q=rho_q,
        s_at_rho_q=screening_fraction(rho_q),
        rho_d=rho_d,
    )


def radius_sweep(f0_grid: np.ndarray) -> np.ndarray:
    """Table (f0, rho_q, s(rho_q)) over a grid of ratio amplitudes.

    Returns an array of shape (n, 3).
    """
    rows = []
    for f0 in np.asarray(f0_grid, dtype=float):
        rho = quadrupolar_radius(float(f0))
        rows.append((float(f0), rho, screening_fraction(rho)))
    return np.array(rows)


class NuclearField(NamedTuple):
    b_n_step: float    # step-profile estimate, T
    b_n_exact: float   # weighted radial integral of the averaged profile, T


#: truncation radius for the exact nuclear-field integral; the orbital
#: weight 4 r^2 e^{-2r} is ~1e-8 there, far below the quadrature budget
FIELD_INTEGRAL_UPPER = 12.0


def nuclear_field(prof: RadialProfile, mat: MaterialRecord) -> NuclearField:
    """Nuclear hyperfine field from a polarization profile.

    The step estimate replaces the averaged profile by a unit step at the
    quadrupolar radius (capped by the diffusion radius when that is
    smaller), giving b_n0 * s(rho).  The exact value integrates the
    averaged profile against the orbital weight.
    """
    rho_eff = prof.rho_q if prof.rho_d is None else min(prof.rho_q, prof.rho_d)
    step = mat.b_n0 * screening_fraction(rho_eff)
    value, _ = quad(lambda r: screening_density(r) * p_avg(r, prof.f0),
                    1e-9, FIELD_INTEGRAL_UPPER, epsabs=1e-12, epsrel=1e-12,
                    limit=400)
    return NuclearField(b_n_step=step, b_n_exact=mat.b_n0 * value)


# --- spin diffusion ---------------------------------------------------------

def _hyperfine_rate(r: float, state: KineticState, b_field: float,
                    mat: MaterialRecord) -> float:
    return rates(r, Geometry(), state, b_field, mat).inv_t1h


def calibrate_diffusion(state: KineticState, b_field: float, mat: MaterialRecord,
                        target: float = RHO_D_REFERENCE) -> float:
    """Diffusion constant (m^2/s) placing the no-quadrupolar balance at target.

    Chosen once so that the hyperfine rate alone equals D/rho^2 at the
    reference radius, on the outward (decreasing) branch; then held fixed.
    """
    if target <= 0.5:
        raise MaterialError("calibration target must sit on the outer branch")
    r_m = target * mat.bohr_radius
    return r_m * r_m * _hyperfine_rate(target, state, b_field, mat)


class DiffusionRadius(NamedTuple):
    value: float | None   # a0* units; None when diffusion wins everywhere
    has_solution: bool


def diffusion_radius(state: KineticState, b_field: float, diffusion_constant: float,
                     mat: MaterialRecord, *, include_quadrupolar: bool = True,
                     f0: float | None = None, r_max: float = 60.0,
                     tol: float = 1e-6) -> DiffusionRadius:
    """Largest radius where direct relaxation still matches spin diffusion.

    Balances the geometry-averaged total relaxation rate against
    D / rho^2 and returns the outermost crossing; inside it, diffusion
    is negligible.  When the rate never reaches the diffusion efficiency
    the returned value is None (diffusion dominates at all distances).

    The quadrupolar channel enters through the angular-averaged inverse
    ratio 2/(f0 * phi(r)); by default f0 follows from the kinetic state,
    and can be overridden to probe a prescribed competition strength.
    """
    if diffusion_constant <= 0.0:
        raise MaterialError("diffusion constant must be positive")
    occ = state.occupancy
    if include_quadrupolar:
        if f0 is None:
            if not 0.0 < occ < 1.0:
                raise MaterialError("quadrupolar channel needs partial occupancy")
            f0 = intrinsic_ratio(mat) / (occ * (1.0 - occ))
    # both rates share the e^{-4(r-1)} hyperfine envelope, and in the
    # quadrupolar one it cancels against the radial factor; evaluating the
    # cancelled forms keeps the balance finite far outside the orbit
    rate_bohr = _hyperfine_rate(1.0, state, b_field, mat)

    def excess(r: float) -> float:
        rate = rate_bohr * math.exp(-4.0 * (r - 1.0))
        if include_quadrupolar:
            s = screening_fraction(r)
            rate += rate_bohr * 2.0 * s * s / (f0 * r ** 4)
        r_m = r * mat.bohr_radius
        return rate * r_m * r_m - diffusion_constant

    grid = np.geomspace(1e-3, r_max, 600)
    values = np.array([excess(r) for r in grid])
    crossings = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]
    if crossings.size == 0 or values[crossings[-1]] <= 0.0:
        # never crosses from relaxation-dominant to diffusion-dominant
        return DiffusionRadius(value=None, has_solution=False)
    left = crossings[-1]
    root = _bisect(excess, float(grid[left]), float(grid[left + 1]), tol,
                   "diffusion radius")
    return DiffusionRadius(value=root, has_solution=True)


# --- excitation-power sweep --------------------------------------------------

@dataclass(frozen=True)
class PowerSweep:
    """Power dependence of the occupancy, radii and reduced nuclear field."""

    p_over_p0: np.ndarray
    occupancy: np.ndarray
    nf_over_na: np.ndarray
    s_rho_q: np.ndarray          # screening at the effective (capped) radius
    alpha_n: np.ndarray          # reduced nuclear field
    diffusion_flag: np.ndarray   # True where bulk spin diffusion dominates
    f00: float
    rho_d: float                 # cap radius used, a0* units
    quadrupolar: bool


def power_sweep(p_over_p0: np.ndarray, mat: MaterialRecord, *,
                rho_d: float = RHO_D_REFERENCE, quadrupolar: bool = True,
                gamma_min: float = GAMMA_MIN_DIFFUSION) -> PowerSweep:
    """Sweep the excitation power and track the reduced nuclear field.

    Per point: occupancy by inverting the power map; free-electron
    density from the carrier balance; the competition amplitude from the
    occupancy; the quadrupolar radius (capped by the diffusion radius)
    and its screening fraction; and the reduced nuclear field
    alpha_n = [occ N_D / (n_f + occ N_D)] * s(rho).  Points below
    gamma_min are computed anyway but flagged: there bulk spin diffusion
    dominates and the local model is not valid.

    With quadrupolar=False the radius saturates at the diffusion cap, the
    no-relaxation ceiling.
    """
    grid = np.asarray(p_over_p0, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0.0):
        raise MaterialError("power grid must be 1-D and positive")
    f00 = intrinsic_ratio(mat)
    p0 = power_map(0.5, mat).p0
    occ = np.empty_like(grid)
    nf = np.empty_like(grid)
    s_rho = np.empty_like(grid)
    alpha = np.empty_like(grid)
    for i, p_rel in enumerate(grid):
        gamma_t = invert_power(p_rel * p0, mat)
        point = power_map(gamma_t, mat)
        occ[i] = gamma_t
        nf[i] = point.free_density
        if quadrupolar:
            f0 = f00 / (gamma_t * (1.0 - gamma_t))
            rho_eff = min(quadrupolar_radius(f0), rho_d)
        else:
            rho_eff = rho_d
        s_rho[i] = screening_fraction(rho_eff)
        trapped = gamma_t * mat.donor_density
        alpha[i] = trapped / (point.free_density + trapped) * s_rho[i]
    return PowerSweep(
        p_over_p0=grid,
        occupancy=occ,
        nf_over_na=nf / mat.acceptor_density,
        s_rho_q=s_rho,
        alpha_n=alpha,
        diffusion_flag=occ < gamma_min,
        f00=f00,
        rho_d=rho_d,
        quadrupolar=quadrupolar,
    )
