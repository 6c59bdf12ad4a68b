"""Dense spin-operator algebra and brute-force oracles.

Everything here works on exact (2I+1)-dimensional complex matrices;
with I <= 9/2 the largest matrix is 10x10, so dense algebra is both
simplest and fastest.  The module provides

* the ladder/projection operators for arbitrary half-integer spin,
* the two field-coupled quadrupole operators and the angle-dependent
  transition-strength factors they generate,
* the general quadrupolar Hamiltonian for arbitrary electric and
  magnetic field orientations,
* matrix oracles (traces, exact diagonalization, an explicit relaxation
  superoperator) that cross-check every closed-form factor used by the
  rate modules.

All functions are pure and all returned arrays are marked read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MaterialError, NonPerturbativeRegimeError
from .fields import Geometry, donor_field, efg_transform
from .materials import E_CHARGE, HBAR, MaterialRecord


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def spin_multiplicity(spin: float) -> int:
    doubled = 2.0 * spin
    if spin <= 0.0 or abs(doubled - round(doubled)) > 1e-12:
        raise MaterialError(f"spin must be a positive half-integer, got {spin}")
    return int(round(doubled)) + 1


@dataclass(frozen=True)
class SpinMatrices:
    """Iz, I+, I- and the identity for one spin, basis ordered m = I..-I."""

    spin: float
    dim: int
    iz: np.ndarray
    iplus: np.ndarray
    iminus: np.ndarray
    identity: np.ndarray

    @property
    def m_values(self) -> np.ndarray:
        return np.diag(self.iz).real


def build_spin_operators(spin: float) -> SpinMatrices:
    """Exact angular-momentum matrices for a half-integer spin."""
    dim = spin_multiplicity(spin)
    m = spin - np.arange(dim)
    iz = np.diag(m).astype(complex)
    iplus = np.zeros((dim, dim), dtype=complex)
    # <m+1| I+ |m> = sqrt(I(I+1) - m(m+1)); rows are ordered by descending m
    for col in range(1, dim):
        mm = m[col]
        iplus[col - 1, col] = math.sqrt(spin * (spin + 1.0) - mm * (mm + 1.0))
    iminus = iplus.conj().T.copy()
    return SpinMatrices(
        spin=spin, dim=dim,
        iz=_freeze(iz), iplus=_freeze(iplus), iminus=_freeze(iminus),
        identity=_freeze(np.eye(dim, dtype=complex)),
    )


@dataclass(frozen=True)
class QuadrupoleOperators:
    """Field-coupled spin operators for one electric-field orientation.

    a1 drives single-quantum transitions, a2 double-quantum ones; the
    adjoints are the matrix Hermitian conjugates.
    """

    spin: float
    theta: float
    phi: float
    a1: np.ndarray
    a2: np.ndarray
    a1_dag: np.ndarray
    a2_dag: np.ndarray


def build_quadrupole_operators(theta: float, phi: float, spin: float) -> QuadrupoleOperators:
    ops = build_spin_operators(spin)
    phase = np.exp(1j * (phi - math.pi / 2.0))
    a1 = math.sin(theta) * phase * (ops.iz @ ops.iplus + ops.iplus @ ops.iz)
    a2 = -1j * math.cos(theta) * (ops.iplus @ ops.iplus)
    return QuadrupoleOperators(
        spin=spin, theta=theta, phi=phi,
        a1=_freeze(a1), a2=_freeze(a2),
        a1_dag=_freeze(a1.conj().T.copy()), a2_dag=_freeze(a2.conj().T.copy()),
    )


class AngularFactor(NamedTuple):
    trace_value: float
    analytic_value: float


def angular_factor(k: int, theta: float, spin: float) -> AngularFactor:
    """Angle-dependent transition-strength factor for channel k in {1, 2}.

    trace_value evaluates Tr{Iz [A_k, [A_k+, Iz]]} / Tr(Iz^2) by explicit
    matrix algebra; analytic_value is the closed form
    (2/5) [4I(I+1) - 3] sin^2(theta) for k = 1 and
    (8/5) [4I(I+1) - 3] cos^2(theta) for k = 2.
    Both vanish identically for spin 1/2.
    """
    if k not in (1, 2):
        raise MaterialError(f"channel k must be 1 or 2, got {k}")
    ops = build_spin_operators(spin)
    quad = build_quadrupole_operators(theta, 0.0, spin)
    a, a_dag = (quad.a1, quad.a1_dag) if k == 1 else (quad.a2, quad.a2_dag)
    inner = a_dag @ ops.iz - ops.iz @ a_dag
    outer = a @ inner - inner @ a
    trace = float(np.trace(ops.iz @ outer).real)
    norm = float(np.trace(ops.iz @ ops.iz).real)
    moment = 4.0 * spin * (spin + 1.0) - 3.0
    if k == 1:
        analytic = 0.4 * moment * math.sin(theta) ** 2
    else:
        analytic = 1.6 * moment * math.cos(theta) ** 2
    return AngularFactor(trace_value=trace / norm, analytic_value=analytic)


def trace_iz2(spin: float) -> float:
    """Closed form I(I+1)(2I+1)/3 for the Iz^2 trace."""
    return spin * (spin + 1.0) * (2.0 * spin + 1.0) / 3.0


def trace_iz4(spin: float) -> float:
    """Closed form (1/5) I(I+1)(2I+1) [I(I+1) - 1/3] for the Iz^4 trace."""
    x = spin * (spin + 1.0)
    return 0.2 * x * (2.0 * spin + 1.0) * (x - 1.0 / 3.0)


# --- Hamiltonians ---------------------------------------------------------

def build_hq_axial(f0q: float, theta: float, phi: float, spin: float) -> np.ndarray:
    """Quadrupolar Hamiltonian (J) for a magnetic field along the surface normal.

    f0q is the static quadrupolar energy scale at the nucleus; theta and
    phi orient the electric field relative to the normal.
    """
    quad = build_quadrupole_operators(theta, phi, spin)
    h = f0q * (quad.a1 + quad.a1_dag + quad.a2 + quad.a2_dag)
    return _freeze(h)


def build_hq_general(e_field: np.ndarray, geometry: Geometry, mat: MaterialRecord) -> np.ndarray:
    """Quadrupolar Hamiltonian (J) for arbitrary field orientations.

    e_field is the electric field vector in crystal coordinates (V/m).
    The matrix is expressed in the magnetic-field frame, whose axis is
    set by (geometry.theta_b, geometry.phi_b).  Hermitian and traceless
    by construction.
    """
    spin = mat.spin
    ops = build_spin_operators(spin)
    v = efg_transform(e_field, geometry, mat.r14)
    x = spin * (spin + 1.0)
    iz, ip, im = ops.iz, ops.iplus, ops.iminus
    sum_pm = ip + im
    diff_pm = ip - im
    ip2, im2 = ip @ ip, im @ im
    pref = E_CHARGE * mat.quadrupole_moment / (4.0 * spin * (2.0 * spin - 1.0)) \
        if spin >= 1.0 else 0.0
    h = pref * (
        v.zz * (3.0 * (iz @ iz) - x * ops.identity)
        + v.xz * (iz @ sum_pm + sum_pm @ iz)
        - 1j * v.yz * (iz @ diff_pm + diff_pm @ iz)
        + 0.5 * (v.xx - v.yy) * (ip2 + im2)
        - 1j * v.xy * (ip2 - im2)
    )
    return _freeze(np.asarray(h, dtype=complex))


class LocalFieldResult(NamedTuple):
    analytic: float
    trace_oracle: float


def bq_local_field(r: float, occupancy: float, geometry: Geometry,
                   mat: MaterialRecord) -> LocalFieldResult:
    """Quadrupolar local field (T) at reduced distance r from the donor.

    analytic: sqrt{(4/5) (b_q E_off)^2 (1 - s*occupancy)^2 [4I(I+1) - 3]}.
    trace_oracle: sqrt{3 Tr(H_Q^2) / [I(I+1)(2I+1) (gamma hbar)^2]} with the
    Hamiltonian built from the quadrupole operators; the two agree exactly,
    independent of the field direction.
    """
    spin = mat.spin
    point = donor_field(r, occupancy, mat)
    moment = 4.0 * spin * (spin + 1.0) - 3.0
    amplitude = mat.b_q * point.e_off * (1.0 - point.screening * occupancy)
    analytic = math.sqrt(0.8 * moment) * abs(amplitude)
    if spin < 1.0:
        return LocalFieldResult(analytic=0.0, trace_oracle=0.0)
    h = build_hq_axial(point.f0q, geometry.theta, geometry.phi, spin)
    tr_h2 = float(np.trace(h @ h).real)
    norm = spin * (spin + 1.0) * (2.0 * spin + 1.0) * (mat.gamma * HBAR) ** 2
    return LocalFieldResult(analytic=analytic, trace_oracle=math.sqrt(3.0 * tr_h2 / norm))


class LevelShift(NamedTuple):
    analytic: float
    numeric: float


def level_shift(m: float, b_field: float, r: float, geometry: Geometry,
                occupancy: float, mat: MaterialRecord,
                perturbative_margin: float = 10.0) -> LevelShift:
    """Second-order quadrupolar shift (J) of Zeeman level m at field b_field.

    analytic uses the closed-form perturbative expression; numeric
    diagonalizes the full Zeeman + quadrupolar matrix and matches
    eigenvalues to levels by adiabatic continuation from the high-field
    ordering.  The Zeeman term is -gamma hbar B Iz (positive gamma means
    level m = I lies lowest), which fixes the sign of the shifts.

    Raises NonPerturbativeRegimeError when b_field is too small for the
    level matching to be trustworthy.
    """
    spin = mat.spin
    if b_field <= 0.0:
        raise MaterialError("b_field must be positive")
    if abs(m) > spin + 1e-12 or abs(2.0 * m - round(2.0 * m)) > 1e-12:
        raise MaterialError(f"m = {m} is not a level of spin {spin}")
    point = donor_field(r, occupancy, mat)
    f0q = point.f0q
    x = spin * (spin + 1.0)
    st2 = math.sin(geometry.theta) ** 2
    ct2 = math.cos(geometry.theta) ** 2
    zeeman_quantum = mat.gamma * HBAR * b_field
    analytic = (2.0 * m * f0q ** 2 / zeeman_quantum) * (
        st2 * (4.0 * x - 8.0 * m * m - 1.0) - ct2 * (2.0 * x - 2.0 * m * m - 1.0)
    )
    ops = build_spin_operators(spin)
    h_q = build_hq_axial(f0q, geometry.theta, geometry.phi, spin)
    h_norm = float(np.linalg.norm(h_q, 2))
    if zeeman_quantum < perturbative_margin * h_norm:
        raise NonPerturbativeRegimeError(
            f"non-perturbative regime: gamma*hbar*B = {zeeman_quantum:.3e} J is not "
            f"large against the quadrupolar scale {h_norm:.3e} J"
        )
    h = -zeeman_quantum * ops.iz + h_q
    eigenvalues = np.linalg.eigvalsh(h)          # ascending <=> m descending
    index = int(round(spin - m))
    numeric = float(eigenvalues[index] + zeeman_quantum * m)
    return LevelShift(analytic=analytic, numeric=numeric)


# --- relaxation superoperator oracle --------------------------------------

def redfield_rate(spin: float, theta: float, j1: float, j2: float) -> float:
    """Spin-temperature decay rate from the explicit double-commutator map.

    Builds sum_k J_k [A_k, [A_k+, .]] for the two quadrupolar channels,
    applies it to a high-temperature density deviation proportional to
    Iz, and extracts d<Iz>/dt / <Iz> at t = 0.  The coupling prefactor is
    taken as one angular frequency unit, so the result equals the sum of
    the two transition-strength factors weighted by the supplied spectral
    densities; compare with :func:`redfield_rate_analytic`.
    """
    ops = build_spin_operators(spin)
    quad = build_quadrupole_operators(theta, 0.0, spin)
    sigma = ops.iz     # deviation from equilibrium, arbitrary scale
    total = np.zeros_like(sigma)
    for a, a_dag, j in ((quad.a1, quad.a1_dag, j1), (quad.a2, quad.a2_dag, j2)):
        inner = a_dag @ sigma - sigma @ a_dag
        total = total + j * (a @ inner - inner @ a)
    flow = float(np.trace(ops.iz @ total).real)
    norm = float(np.trace(ops.iz @ ops.iz).real)
    return flow / norm


def redfield_rate_analytic(spin: float, theta: float, j1: float, j2: float) -> float:
    """Closed-form counterpart of :func:`redfield_rate`."""
    k1 = angular_factor(1, theta, spin).analytic_value
    k2 = angular_factor(2, theta, spin).analytic_value
    return k1 * j1 + k2 * j2
