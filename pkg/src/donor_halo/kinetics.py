"""Donor occupancy, telegraph-noise statistics, and the excitation-power map.

Photoelectron trapping and recombination make the donor charge state a
two-state Markov (telegraph) process.  This module carries the
steady-state occupancy and correlation times, the exact two-state
correlation function together with a Monte Carlo estimator for it, the
Lorentzian spectral density with its Fourier-quadrature oracle, and the
steady-state carrier balance linking donor occupancy to the excitation
power density.

Pure functions throughout; the Monte Carlo simulator takes an explicit
seed and is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.linalg import expm

from .errors import BracketError, MaterialError
from .materials import MaterialRecord

#: below this donor occupancy, bulk spin diffusion dominates the nuclear
#: polarization and the local steady-state model loses validity
GAMMA_MIN_DIFFUSION = 0.15


@dataclass(frozen=True)
class KineticState:
    """Steady-state carrier kinetics around one donor."""

    occupancy: float        # fraction of time the donor holds an electron
    free_density: float     # free-electron density, m^-3
    tau_quad: float         # correlation time of the quadrupolar modulation, s
    tau_hyper: float        # correlation time of the hyperfine coupling, s
    tau_r: float            # trapped-electron recombination time, s
    tau_capture: float      # ionized-donor lifetime against capture, s
    degenerate: bool = False  # True when free_density = 0 (no exchange channel)


def occupancy(free_density: float, mat: MaterialRecord, *,
              spin_lattice_time: float | None = None,
              exchange_time: float | None = None) -> KineticState:
    """Kinetic state for a given free-electron density.

    The donor occupancy follows from balancing capture against
    recombination; the quadrupolar correlation time combines the
    recombination and capture lifetimes.  The hyperfine correlation time
    defaults to the spin-exchange limit 1/(sigma_exchange * v * n_f);
    pass spin_lattice_time and/or exchange_time to use the full
    combination 1/(2 tau_r) + 1/T1 + 1/tau_ex instead.
    """
    if free_density < 0.0:
        raise MaterialError("free-electron density must be non-negative")
    tau_r = mat.recombination_time
    capture_rate = mat.sigma_capture * mat.velocity * free_density
    gamma_t = capture_rate * tau_r / (1.0 + capture_rate * tau_r)
    tau_quad = 1.0 / (1.0 / tau_r + capture_rate)
    if spin_lattice_time is None and exchange_time is None:
        exchange_rate = mat.sigma_exchange * mat.velocity * free_density
        tau_hyper = 1.0 / exchange_rate if exchange_rate > 0.0 else math.inf
    else:
        rate = 0.5 / tau_r
        if spin_lattice_time is not None:
            rate += 1.0 / spin_lattice_time
        if exchange_time is not None:
            rate += 1.0 / exchange_time
        tau_hyper = 1.0 / rate
    return KineticState(
        occupancy=gamma_t,
        free_density=free_density,
        tau_quad=tau_quad,
        tau_hyper=tau_hyper,
        tau_r=tau_r,
        tau_capture=1.0 / capture_rate if capture_rate > 0.0 else math.inf,
        degenerate=(free_density == 0.0),
    )


def state_for_occupancy(gamma_t: float, mat: MaterialRecord) -> KineticState:
    """Kinetic state whose steady occupancy equals gamma_t (fixed tau_r)."""
    if not 0.0 <= gamma_t < 1.0:
        raise MaterialError("occupancy must lie in [0, 1)")
    if gamma_t == 0.0:
        return occupancy(0.0, mat)
    n_f = gamma_t / ((1.0 - gamma_t) * mat.sigma_capture * mat.velocity
                     * mat.recombination_time)
    return occupancy(n_f, mat)


# --- telegraph correlation -------------------------------------------------

def telegraph_values(occ: float, screening: float) -> tuple[float, float]:
    """Fractional field modulation (h_empty, h_occupied); zero mean by weight."""
    if not 0.0 <= occ <= 1.0:
        raise MaterialError("occupancy must lie in [0, 1]")
    if not 0.0 <= screening < 1.0:
        raise MaterialError("screening must lie in [0, 1)")
    denom = 1.0 - screening * occ
    return screening * occ / denom, -screening * (1.0 - occ) / denom


def telegraph_amplitude(occ: float, screening: float) -> float:
    """Zero-lag correlation occ(1-occ) s^2 / (1 - s*occ)^2."""
    h_empty, h_occ = telegraph_values(occ, screening)
    return (1.0 - occ) * h_empty ** 2 + occ * h_occ ** 2


class TelegraphCorrelation(NamedTuple):
    g_analytic: float
    p_matrix: np.ndarray   # conditional probabilities, state order [empty, occupied]


def telegraph_p_matrix(tau: float, tau_occupied: float, tau_empty: float) -> np.ndarray:
    """Closed-form conditional probabilities of the two-state process.

    Row alpha, column beta is P(state beta at lag tau | state alpha at 0),
    states ordered [empty, occupied]; every row relaxes exponentially to
    the stationary weights (1-occ, occ) at total rate
    1/tau_occupied + 1/tau_empty.
    """
    if min(tau_occupied, tau_empty) <= 0.0:
        raise MaterialError("dwell times must be positive")
    occ = tau_occupied / (tau_occupied + tau_empty)
    stationary = np.array([1.0 - occ, occ])
    decay = math.exp(-abs(tau) * (1.0 / tau_occupied + 1.0 / tau_empty))
    return stationary[None, :] + (np.eye(2) - stationary[None, :]) * decay


def telegraph_p_matrix_expm(tau: float, tau_occupied: float, tau_empty: float) -> np.ndarray:
    """Matrix-exponential oracle for :func:`telegraph_p_matrix`."""
    generator = np.array([
        [-1.0 / tau_empty, 1.0 / tau_empty],
        [1.0 / tau_occupied, -1.0 / tau_occupied],
    ])
    return expm(generator * abs(tau))


def telegraph_correlation(tau: float, occ: float, screening: float,
                          tau_occupied: float, tau_empty: float,
                          rtol: float = 1e-9) -> TelegraphCorrelation:
    """Exact autocorrelation of the field modulation at lag tau.

    The supplied occupancy must match tau_occupied/(tau_occupied+tau_empty).
    """
    implied = tau_occupied / (tau_occupied + tau_empty)
    if abs(implied - occ) > rtol * max(occ, implied, 1e-300):
        raise MaterialError(
            f"inconsistent occupancy: given {occ}, dwell times imply {implied}"
        )
    amplitude = telegraph_amplitude(occ, screening)
    decay = math.exp(-abs(tau) * (1.0 / tau_occupied + 1.0 / tau_empty))
    return TelegraphCorrelation(
        g_analytic=amplitude * decay,
        p_matrix=telegraph_p_matrix(tau, tau_occupied, tau_empty),
    )


def correlation_from_conditionals(tau: float, occ: float, screening: float,
                                  tau_occupied: float, tau_empty: float) -> float:
    """Reconstruct the correlation as sum_ab h_a w_a h_b P_ab(tau)."""
    h = np.array(telegraph_values(occ, screening))        # [empty, occupied]
    w = np.array([1.0 - occ, occ])
    p = telegraph_p_matrix(tau, tau_occupied, tau_empty)
    return float((h * w) @ p @ h)


def hyperfine_correlation_amplitude(occ: float) -> float:
    """Zero-lag amplitude of the hyperfine correlation: the occupancy itself.

    The hyperfine channel only switches off when the donor is never
    occupied, unlike the quadrupolar one which also vanishes at full
    occupancy.
    """
    if not 0.0 <= occ <= 1.0:
        raise MaterialError("occupancy must lie in [0, 1]")
    return occ


@dataclass(frozen=True)
class TelegraphEstimate:
    """Monte Carlo autocorrelation estimate for the telegraph modulation."""

    lag_times: np.ndarray
    acf: np.ndarray
    acf_se: np.ndarray
    mean: float
    mean_se: float
    decay_rate: float       # fitted exponential rate, 1/s
    amplitude: float        # estimated zero-lag correlation
    dwell_count: int
    total_time: float


def simulate_telegraph(occ: float, screening: float, tau_occupied: float,
                       tau_empty: float, n_dwell: int, seed: int,
                       n_lags: int = 32, samples_per_dwell: float = 5.0,
                       n_blocks: int = 64) -> TelegraphEstimate:
    """Simulate the two-state modulation and estimate its autocorrelation.

    Draws n_dwell exponential dwell intervals (alternating states, the
    first chosen from the stationary law), samples the modulation on a
    uniform grid of spacing min(tau)/samples_per_dwell, and returns the
    empirical autocorrelation with blocked standard errors plus a
    log-linear fit of the decay rate.
    """
    if n_dwell < 4:
        raise MaterialError("need at least a few dwell events")
    if not 0.0 < screening < 1.0:
        raise MaterialError("simulation needs a nonzero modulation depth")
    implied = tau_occupied / (tau_occupied + tau_empty)
    if abs(implied - occ) > 1e-9 * max(occ, implied):
        raise MaterialError("occupancy inconsistent with dwell times")
    rng = np.random.default_rng(seed)
    first_occupied = bool(rng.random() < occ)
    # state sequence alternates, so dwell means alternate too
    means = np.empty(n_dwell)
    if first_occupied:
        means[0::2], means[1::2] = tau_occupied, tau_empty
    else:
        means[0::2], means[1::2] = tau_empty, tau_occupied
    durations = rng.exponential(means)
    edges = np.cumsum(durations)
    total = float(edges[-1])
    h_empty, h_occ = telegraph_values(occ, screening)

    dt = min(tau_occupied, tau_empty) / samples_per_dwell
    n_samples = int(total / dt)
    times = (np.arange(n_samples) + 0.5) * dt
    dwell_index = np.searchsorted(edges, times, side="right")
    occupied = (dwell_index % 2 == 0) if first_occupied else (dwell_index % 2 == 1)
    h = np.where(occupied, h_occ, h_empty)

    block_len = n_samples // n_blocks
    usable = block_len * n_blocks
    blocks = h[:usable].reshape(n_blocks, block_len)
    block_means = blocks.mean(axis=1)
    mean = float(block_means.mean())
    mean_se = float(block_means.std(ddof=1) / math.sqrt(n_blocks))

    lags = np.arange(n_lags)
    acf = np.empty(n_lags)
    acf_se = np.empty(n_lags)
    for k in lags:
        prod = h[: n_samples - k] * h[k:] if k else h * h
        pb_len = prod.size // n_blocks
        pb = prod[: pb_len * n_blocks].reshape(n_blocks, pb_len).mean(axis=1)
        acf[k] = pb.mean()
        acf_se[k] = pb.std(ddof=1) / math.sqrt(n_blocks)

    # fit the decay over roughly one decade, where log-linearity is clean
    threshold = max(3.0 * acf_se.max(), 0.1 * acf[0])
    below = np.nonzero(acf <= threshold)[0]
    k_max = int(below[0]) if below.size else n_lags
    k_max = max(k_max, 4)
    slope = np.polyfit(lags[:k_max] * dt, np.log(acf[:k_max]), 1)[0]
    return TelegraphEstimate(
        lag_times=lags * dt, acf=acf, acf_se=acf_se,
        mean=mean, mean_se=mean_se,
        decay_rate=float(-slope), amplitude=float(acf[0]),
        dwell_count=n_dwell, total_time=total,
    )


# --- spectral density -------------------------------------------------------

def spectral_density(omega: float, amplitude: float, tau_c: float) -> float:
    """Lorentzian spectral density 2 * amplitude * tau_c / (1 + omega^2 tau_c^2)."""
    if tau_c <= 0.0:
        raise MaterialError("correlation time must be positive")
    return 2.0 * amplitude * tau_c / (1.0 + (omega * tau_c) ** 2)


def spectral_density_quadrature(omega: float, amplitude: float, tau_c: float) -> float:
    """Fourier-integral oracle: 2 int_0^inf cos(omega t) amplitude e^(-t/tau) dt.

    Integrated in units of the correlation time so the adaptive rule sees
    a unit decay scale; truncated where the envelope is ~1e-26.
    """
    if tau_c <= 0.0:
        raise MaterialError("correlation time must be positive")
    w = omega * tau_c

    def integrand(u: float) -> float:
        return math.cos(w * u) * math.exp(-u)

    value, _ = quad(integrand, 0.0, 60.0, epsabs=1e-12, epsrel=1e-12, limit=800)
    return 2.0 * amplitude * tau_c * value


# --- excitation power map ---------------------------------------------------

class PowerPoint(NamedTuple):
    power: float         # excitation power density, W/m^2
    p0: float            # doping-dependent power scale, W/m^2
    xi: float            # capture-vs-recombination occupancy variable
    free_density: float  # m^-3


def gamma_ceiling(mat: MaterialRecord) -> float:
    """Largest occupancy reachable at any power: 1 / (1 + k/(sigma_c v))."""
    return 1.0 / (1.0 + mat.bimolecular_k / (mat.sigma_capture * mat.velocity))


def power_scale(mat: MaterialRecord) -> float:
    """P0 = L * h_nu * k * N_A * N_D."""
    return (mat.diffusion_length * mat.photon_energy * mat.bimolecular_k
            * mat.acceptor_density * mat.donor_density)


def _free_density(gamma_t: float, mat: MaterialRecord) -> float:
    capture = mat.sigma_capture * mat.velocity
    denom = capture * (1.0 - gamma_t) - mat.bimolecular_k * gamma_t
    if denom <= 0.0:
        raise MaterialError(
            f"capture-limited ceiling exceeded: occupancy {gamma_t} is not "
            f"reachable (max {gamma_ceiling(mat):.6f})"
        )
    return (mat.bimolecular_k * gamma_t
            * (mat.acceptor_density + gamma_t * mat.donor_density) / denom)


def power_map(gamma_t: float, mat: MaterialRecord) -> PowerPoint:
    """Excitation power density that sustains donor occupancy gamma_t.

    Solves the full steady-state balance: the free-electron density
    follows from the trapping balance, the hole population from charge
    neutrality, and the generation rate from the free-electron budget;
    power is the generation rate times (diffusion length * photon
    energy).  The compact approximation valid for N_D << N_A is exposed
    separately as :func:`power_closed_form`.
    """
    if not 0.0 < gamma_t < 1.0:
        raise MaterialError("occupancy must lie strictly inside (0, 1)")
    capture = mat.sigma_capture * mat.velocity
    n_f = _free_density(gamma_t, mat)
    generation = n_f * (
        (capture * (1.0 - gamma_t) + mat.bimolecular_k * gamma_t) * mat.donor_density
        + mat.bimolecular_k * (n_f + mat.acceptor_density)
    )
    xi = (mat.bimolecular_k / capture) * gamma_t / (1.0 - gamma_t)
    return PowerPoint(
        power=generation * mat.diffusion_length * mat.photon_energy,
        p0=power_scale(mat),
        xi=xi,
        free_density=n_f,
    )


def power_closed_form(gamma_t: float, mat: MaterialRecord) -> float:
    """Compact power law P0 [gamma + xi N_A/N_D] / (1 - xi)^2 (N_D << N_A limit)."""
    if not 0.0 < gamma_t < 1.0:
        raise MaterialError("occupancy must lie strictly inside (0, 1)")
    capture = mat.sigma_capture * mat.velocity
    xi = (mat.bimolecular_k / capture) * gamma_t / (1.0 - gamma_t)
    if xi >= 1.0:
        raise MaterialError("capture-limited ceiling exceeded")
    ratio = mat.acceptor_density / mat.donor_density
    return power_scale(mat) * (gamma_t + xi * ratio) / (1.0 - xi) ** 2


def balance_residuals(gamma_t: float, mat: MaterialRecord) -> dict[str, float]:
    """Relative residuals of the raw steady-state balance equations.

    Returns the trapping balance (capture feeding the donors vs their
    recombination, with the recombination time tied to the hole
    population) and the free-electron budget against g = P/(L h_nu).
    Both vanish to rounding for the exact map.
    """
    point = power_map(gamma_t, mat)
    n_f = point.free_density
    capture = mat.sigma_capture * mat.velocity
    holes = mat.acceptor_density + n_f + gamma_t * mat.donor_density
    recombination_rate = mat.bimolecular_k * holes        # 1/tau_r at this power
    trap_in = capture * (1.0 - gamma_t) * mat.donor_density * n_f
    trap_out = gamma_t * mat.donor_density * recombination_rate
    generation = point.power / (mat.diffusion_length * mat.photon_energy)
    budget = n_f * ((capture * (1.0 - gamma_t) + mat.bimolecular_k * gamma_t)
                    * mat.donor_density
                    + mat.bimolecular_k * (n_f + mat.acceptor_density))
    return {
        "trapping": abs(trap_in - trap_out) / trap_out,
        "generation": abs(generation - budget) / budget,
    }


def invert_power(power: float, mat: MaterialRecord, rtol: float = 1e-10,
                 max_iter: int = 200) -> float:
    """Occupancy sustained by a given power density (bisection).

    The power map is strictly increasing on (0, gamma_ceiling) and onto
    (0, inf), so the bisection always converges.
    """
    if power <= 0.0:
        raise MaterialError("power must be positive")
    ceiling = gamma_ceiling(mat)
    lo, hi = 1e-16, ceiling * (1.0 - 1e-14)
    if power_map(hi, mat).power < power:
        return hi             # asymptotic plateau beyond any finite bracket
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        value = power_map(mid, mat).power
        if abs(value - power) <= rtol * power:
            return mid
        if hi - lo <= 4.0 * np.finfo(float).eps * ceiling:
            # occupancy resolved to machine precision; near the ceiling
            # pole the power tolerance itself is unreachable in floats
            return mid
        if value < power:
            lo = mid
        else:
            hi = mid
    raise BracketError("power inversion did not converge")
