"""SI superconducting-circuit description -> dimensionless model parameters.

The chain is an array of charge islands (capacitance C0 to ground and
common leads, coupling capacitance C1 to each neighbor) biased at the
charge degeneracy point; the resonator contains a flux-tunable SQUID whose
inductance responds to the qubit loop currents, which is what produces the
photon-number-dependent shift of the chain's transverse field.

Conventions:

* all inputs SI (farads, henries, amperes, meters, radians),
* ``E_J`` and the frequency arguments are cyclic frequencies in Hz
  (energy / h); the 2 pi factors cancel in every dimensionless ratio,
* the printed-form Ising couplings B1 = 4 e^2 (C1/C0), B2 = 4 e^2 (C1/C0)^2
  are reported verbatim alongside a variant derived from the exact inverse
  capacitance matrix with charge operators +-1/2 (B1 = e^2 C^-1_{i,i+1}),
  since the two differ in their dimensional prefactor; their ratio, which
  is what the next-nearest-neighbor validity criterion C1/C0 < 1/2 uses,
  agrees to leading order either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .errors import DomainError, InductanceDivergenceError
from .semiclassical import ModelParams

FLUX_QUANTUM = constants.h / (2.0 * constants.e)

NNN_RATIO_LIMIT = 0.5

# qubit loop size when not specified; ~1 um reproduces the headline coupling
DEFAULT_LOOP_SIZE = 1e-6


@dataclass(frozen=True)
class CircuitSpec:
    """SI circuit parameters.

    C0/C1 in farads (island and coupling capacitance), E_J in Hz (junction
    Josephson energy / h), L_r in henries (resonator loop inductance), C_r
    in farads, I_r in amperes (SQUID junction critical current), I_q2 in
    amperes (qubit loop current scale), R0 in meters (qubit loop size),
    phi_ex in radians (external SQUID phase), M chain length.
    """

    C0: float
    C1: float
    E_J: float
    L_r: float
    C_r: float
    I_r: float
    I_q2: float
    R0: float = DEFAULT_LOOP_SIZE
    phi_ex: float = math.pi / 4.0
    M: int = 100

    def __post_init__(self):
        for name in ("C0", "C1", "E_J", "L_r", "C_r", "I_r", "I_q2", "R0"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(float(v)) or v <= 0:
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")
        if not math.isfinite(float(self.phi_ex)):
            raise DomainError(f"phi_ex must be finite, got {self.phi_ex!r}")
        if self.C1 >= self.C0:
            raise DomainError(f"need C1 < C0, got C1 = {self.C1!r}, C0 = {self.C0!r}")
        if not isinstance(self.M, (int, np.integer)) or isinstance(self.M, bool) or self.M < 1:
            raise DomainError(f"M must be a positive integer, got {self.M!r}")

    @property
    def nnn_valid(self) -> bool:
        """Whether C1/C0 < 1/2, below which the next-nearest-neighbor
        coupling leaves the phase diagram qualitatively intact."""
        return self.C1 / self.C0 < NNN_RATIO_LIMIT


@dataclass(frozen=True)
class InverseCapacitance:
    """Exact inverse of the chain capacitance matrix plus the second-order
    expansion of its leading elements."""

    matrix: np.ndarray
    expansion_diag: float      # 1/C0 + 2 C1^2 / C0^3
    expansion_offdiag: float   # C1 / C0^2


@dataclass(frozen=True)
class IsingCouplings:
    B1: float
    B2: float
    ratio: float
    valid: bool


@dataclass(frozen=True)
class DerivedCouplings:
    """Everything the circuit mapping produces, SI plus dimensionless."""

    B1_literal: float
    B2_literal: float
    B1_derived: float
    B2_derived: float
    ratio: float
    nnn_valid: bool
    L_sq0: float
    omega_c0_Hz: float
    g_Hz: float
    dimensionless: ModelParams


def inverse_capacitance(C0: float, C1: float, M: int, *,
                        periodic: bool = True) -> InverseCapacitance:
    """Invert the chain capacitance matrix (diagonal C0, off-diagonal -C1,
    wraparound when periodic) and report the quoted second-order expansion
    of its elements for comparison.

    The matrix is strictly diagonally dominant for C1 < C0/2 and stays
    invertible for all C1 < C0 on a chain; a direct solve is exact to
    machine precision at these sizes.
    """
    if not isinstance(M, (int, np.integer)) or isinstance(M, bool) or M < 3:
        raise DomainError(f"chain length must be an integer >= 3, got {M!r}")
    if not (0.0 < C1 < C0) or not math.isfinite(C0) or not math.isfinite(C1):
        raise DomainError(f"need 0 < C1 < C0, got C1 = {C1!r}, C0 = {C0!r}")
    cmat = C0 * np.eye(M) - C1 * (np.eye(M, k=1) + np.eye(M, k=-1))
    if periodic:
        cmat[0, M - 1] -= C1
        cmat[M - 1, 0] -= C1
    try:
        inv = np.linalg.inv(cmat)
    except np.linalg.LinAlgError as exc:
        raise DomainError(f"capacitance matrix is singular for C1/C0 = {C1 / C0:g}") from exc
    return InverseCapacitance(
        matrix=inv,
        expansion_diag=1.0 / C0 + 2.0 * C1**2 / C0**3,
        expansion_offdiag=C1 / C0**2,
    )


def ising_couplings(C0: float, C1: float) -> IsingCouplings:
    """Printed-form chain couplings B1 = 4 e^2 (C1/C0), B2 = 4 e^2 (C1/C0)^2
    and the next-nearest-neighbor validity flag (ratio < 1/2)."""
    if not (0.0 < C1 < C0) or not math.isfinite(C0) or not math.isfinite(C1):
        raise DomainError(f"need 0 < C1 < C0, got C1 = {C1!r}, C0 = {C0!r}")
    ratio = C1 / C0
    e2 = constants.e**2
    return IsingCouplings(
        B1=4.0 * e2 * ratio,
        B2=4.0 * e2 * ratio**2,
        ratio=ratio,
        valid=ratio < NNN_RATIO_LIMIT,
    )


def ising_couplings_derived(C0: float, C1: float, M: int = 12) -> tuple[float, float]:
    """Coupling energies from the exact inverse capacitance matrix with
    charge operators +-1/2: B1 = e^2 C^-1_{i,i+1}, B2 = e^2 C^-1_{i,i+2}
    (joules).  Dimensionally consistent counterpart of the printed forms.
    """
    inv = inverse_capacitance(C0, C1, M).matrix
    e2 = constants.e**2
    return (e2 * float(inv[0, 1]), e2 * float(inv[0, 2]))


def squid_inductance(I_r: float, phi_ex: float, Phi_r: float) -> float:
    """Effective SQUID inductance (henries)

        L_sq = (hbar/2e) / (2 I_r cos(phi_ex) - 2 I_r sin(phi_ex) pi Phi_r / Phi_0),

    which grows as the qubit flux Phi_r eats into the denominator and
    diverges when the denominator reaches zero; operating points at or past
    the divergence raise :class:`InductanceDivergenceError`.
    """
    if I_r <= 0 or not math.isfinite(I_r):
        raise DomainError(f"critical current must be positive, got {I_r!r}")
    if not math.isfinite(phi_ex) or not math.isfinite(Phi_r):
        raise DomainError("phi_ex and Phi_r must be finite")
    den = 2.0 * I_r * math.cos(phi_ex) - 2.0 * I_r * math.sin(phi_ex) * (
        math.pi * Phi_r / FLUX_QUANTUM
    )
    if den <= 0.0:
        raise InductanceDivergenceError(
            f"SQUID inductance denominator {den:g} A is not positive at "
            f"phi_ex = {phi_ex:g}, Phi_r = {Phi_r:g} Wb"
        )
    return (constants.hbar / (2.0 * constants.e)) / den


def resonator_params(spec: CircuitSpec) -> tuple[float, float]:
    """(omega_c0_Hz, g_Hz): bare resonator frequency and qubit-resonator
    coupling, both as cyclic frequencies.

    omega_c0 = ((L_sq0 + L_r) C_r)^(-1/2) with L_sq0 the SQUID inductance
    at zero qubit flux, and

        g = omega_c0 (L_sq0 / (L_sq0 + L_r)) (pi/2) (mu_0 R0 I_q2 / (Phi_0 sqrt(2))),

    first order in the qubit flux and exactly linear in both R0 and I_q2.
    """
    L_sq0 = squid_inductance(spec.I_r, spec.phi_ex, 0.0)
    omega = 1.0 / math.sqrt((L_sq0 + spec.L_r) * spec.C_r)  # rad/s
    g = omega * (L_sq0 / (L_sq0 + spec.L_r)) * (math.pi / 2.0) * (
        constants.mu_0 * spec.R0 * spec.I_q2 / (FLUX_QUANTUM * math.sqrt(2.0))
    )
    return omega / (2.0 * math.pi), g / (2.0 * math.pi)


def to_dimensionless(spec: CircuitSpec, ferro_coupling_Hz: float,
                     kappa_Hz: float, detuning_Hz: float = 0.0, *,
                     g_Hz: float | None = None) -> ModelParams:
    """Divide every rate by the ferromagnetic coupling (the energy unit).

    J_x = (E_J/2) / ferro since the single-island term contributes
    -E_J/2 per qubit.  ``g_Hz`` overrides the coupling derived from the
    spec, for feeding a quoted value directly.
    """
    if not math.isfinite(ferro_coupling_Hz) or ferro_coupling_Hz <= 0:
        raise DomainError(f"ferro_coupling_Hz must be > 0, got {ferro_coupling_Hz!r}")
    if g_Hz is None:
        _, g_Hz = resonator_params(spec)
    return ModelParams(
        J_x=(spec.E_J / 2.0) / ferro_coupling_Hz,
        g=g_Hz / ferro_coupling_Hz,
        kappa=kappa_Hz / ferro_coupling_Hz,
        delta_c=detuning_Hz / ferro_coupling_Hz,
        M=spec.M,
    )


def derive_couplings(spec: CircuitSpec, ferro_coupling_Hz: float,
                     kappa_Hz: float, detuning_Hz: float = 0.0) -> DerivedCouplings:
    """Full circuit-to-model mapping in one shot."""
    lit = ising_couplings(spec.C0, spec.C1)
    b1d, b2d = ising_couplings_derived(spec.C0, spec.C1, max(spec.M, 3) if spec.M <= 12 else 12)
    omega_Hz, g_Hz = resonator_params(spec)
    return DerivedCouplings(
        B1_literal=lit.B1,
        B2_literal=lit.B2,
        B1_derived=b1d,
        B2_derived=b2d,
        ratio=lit.ratio,
        nnn_valid=lit.valid,
        L_sq0=squid_inductance(spec.I_r, spec.phi_ex, 0.0),
        omega_c0_Hz=omega_Hz,
        g_Hz=g_Hz,
        dimensionless=to_dimensionless(spec, ferro_coupling_Hz, kappa_Hz, detuning_Hz),
    )


def reference_circuit_spec(E_J_Hz: float = 7.2e9, M: int = 100) -> CircuitSpec:
    """The quoted SI parameter set: L_r = 100 pH, I_q2 = 80 nA,
    I_r = 1200 nA, C_r = 0.1 pF, phi_ex = pi/4, with the loop size left at
    its documented default.  E_J defaults to 2 x 1.8 x the 2 GHz energy
    unit so the dimensionless field lands at 1.8."""
    return CircuitSpec(
        C0=1e-15,
        C1=1e-16,
        E_J=E_J_Hz,
        L_r=100e-12,
        C_r=0.1e-12,
        I_r=1200e-9,
        I_q2=80e-9,
        M=M,
    )
