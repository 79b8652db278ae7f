import math

import numpy as np
import pytest
from scipy import constants

from isingcavity.circuit import (
    DEFAULT_LOOP_SIZE,
    FLUX_QUANTUM,
    CircuitSpec,
    derive_couplings,
    inverse_capacitance,
    ising_couplings,
    ising_couplings_derived,
    reference_circuit_spec,
    resonator_params,
    squid_inductance,
    to_dimensionless,
)
from isingcavity.errors import DomainError, InductanceDivergenceError


class TestInverseCapacitance:
    def test_decoupled_limit(self):
        ic = inverse_capacitance(1e-15, 1e-23, 8)
        assert np.allclose(np.diag(ic.matrix), 1e15, rtol=1e-10)
        assert abs(ic.matrix[0, 1]) < 1e-6 * abs(ic.matrix[0, 0])

    def test_exact_inverse(self):
        C0, C1, M = 1e-15, 2e-16, 9
        cmat = C0 * np.eye(M) - C1 * (np.eye(M, k=1) + np.eye(M, k=-1))
        cmat[0, -1] -= C1
        cmat[-1, 0] -= C1
        ic = inverse_capacitance(C0, C1, M)
        assert np.allclose(ic.matrix @ cmat, np.eye(M), atol=1e-12)

    def test_expansion_accuracy(self):
        # errors at C1/C0 = 0.1 are O(1e-3 / C0): cubic for the off-diagonal,
        # quartic for the diagonal
        C0 = 1e-15
        ic = inverse_capacitance(C0, 0.1 * C0, 10)
        assert abs(ic.matrix[0, 0] - ic.expansion_diag) < 1e-3 / C0
        assert abs(ic.matrix[0, 1] - ic.expansion_offdiag) < 5e-3 / C0

    def test_convergence_order(self):
        """Off-diagonal expansion error falls off as the cube of C1/C0 (the
        diagonal converges one order faster and only tightens the sum)."""
        C0 = 1e-15
        ratios = np.array([0.05, 0.1, 0.2])
        errs = []
        for r in ratios:
            ic = inverse_capacitance(C0, float(r) * C0, 10)
            errs.append(abs(ic.matrix[0, 1] - ic.expansion_offdiag)
                        + abs(ic.matrix[0, 0] - ic.expansion_diag))
        slope = np.polyfit(np.log(ratios), np.log(errs), 1)[0]
        assert slope == pytest.approx(3.0, abs=0.3)

    def test_long_range_decay(self):
        C0 = 1e-15
        ic = inverse_capacitance(C0, 0.05 * C0, 12)
        assert ic.matrix[0, 2] / ic.matrix[0, 1] == pytest.approx(0.05, rel=0.05)

    @pytest.mark.parametrize("kwargs", [
        {"C0": 1e-15, "C1": 2e-15, "M": 8},
        {"C0": 1e-15, "C1": 0.0, "M": 8},
        {"C0": 1e-15, "C1": 1e-16, "M": 2},
    ])
    def test_domain(self, kwargs):
        with pytest.raises(DomainError):
            inverse_capacitance(**kwargs)


class TestIsingCouplings:
    def test_ratio_and_validity(self):
        out = ising_couplings(1e-15, 3e-16)
        assert out.ratio == pytest.approx(0.3, abs=1e-12)
        assert out.valid

    def test_invalid_ratio(self):
        assert not ising_couplings(1e-15, 6e-16).valid

    def test_algebraic_ratio(self):
        out = ising_couplings(2e-15, 5e-16)
        assert out.B2 / out.B1 == pytest.approx(out.ratio, rel=1e-12)

    def test_derived_ratio(self):
        b1, b2 = ising_couplings_derived(1e-15, 5e-17)
        assert b2 / b1 == pytest.approx(0.05, rel=0.05)
        # dimensionally an energy: e^2 / farad
        assert b1 == pytest.approx(constants.e**2 * 0.05 / 1e-15, rel=0.05)


class TestSquidInductance:
    def test_zero_phase(self):
        I_r = 1e-6
        expected = constants.hbar / (2 * constants.e) / (2 * I_r)
        assert squid_inductance(I_r, 0.0, 0.0) == pytest.approx(expected, rel=1e-12)

    def test_operating_point_value(self):
        # direct evaluation at the quoted bias; the printed shorthand of
        # ~100 pH undershoots this by about 2x
        L0 = squid_inductance(1200e-9, math.pi / 4, 0.0)
        assert L0 == pytest.approx(193.93e-12, rel=1e-3)

    def test_monotone_in_flux(self):
        vals = [squid_inductance(1.2e-6, math.pi / 4, f * FLUX_QUANTUM)
                for f in (0.0, 0.02, 0.05)]
        assert vals[0] < vals[1] < vals[2]

    def test_divergence(self):
        with pytest.raises(InductanceDivergenceError):
            squid_inductance(1.2e-6, math.pi / 4, FLUX_QUANTUM)
        with pytest.raises(InductanceDivergenceError):
            squid_inductance(1.2e-6, 2.0, 0.0)  # cos < 0 at zero flux


class TestResonatorParams:
    def test_quoted_magnitudes(self):
        w_Hz, g_Hz = resonator_params(reference_circuit_spec())
        assert 0.5 <= w_Hz / 29e9 <= 2.0
        assert 0.5 <= g_Hz / 1e6 <= 2.0

    def test_coupling_linear_in_loop_current(self):
        base = reference_circuit_spec()
        doubled = CircuitSpec(
            C0=base.C0, C1=base.C1, E_J=base.E_J, L_r=base.L_r, C_r=base.C_r,
            I_r=base.I_r, I_q2=2 * base.I_q2, R0=base.R0, phi_ex=base.phi_ex, M=base.M)
        assert resonator_params(doubled)[1] == pytest.approx(
            2 * resonator_params(base)[1], rel=1e-12)

    def test_coupling_linear_in_loop_size(self):
        base = reference_circuit_spec()
        bigger = CircuitSpec(
            C0=base.C0, C1=base.C1, E_J=base.E_J, L_r=base.L_r, C_r=base.C_r,
            I_r=base.I_r, I_q2=base.I_q2, R0=3 * base.R0, phi_ex=base.phi_ex, M=base.M)
        assert resonator_params(bigger)[1] == pytest.approx(
            3 * resonator_params(base)[1], rel=1e-12)

    def test_coupling_vanishes_without_squid_inductance(self):
        # enormous critical current: L_sq0 -> 0 and the qubits decouple
        base = reference_circuit_spec()
        kwargs = {k: getattr(base, k) for k in
                  ("C0", "C1", "E_J", "L_r", "C_r", "I_r", "I_q2", "R0", "phi_ex", "M")}
        kwargs["I_r"] = 1e6 * kwargs["I_r"]
        assert resonator_params(CircuitSpec(**kwargs))[1] < 1e-5 * resonator_params(base)[1]

    def test_frequency_monotone_in_elements(self):
        base = reference_circuit_spec()
        w0 = resonator_params(base)[0]
        for field, factor in (("L_r", 2.0), ("C_r", 2.0), ("I_r", 0.5)):
            # halving I_r doubles L_sq0
            kwargs = {k: getattr(base, k) for k in
                      ("C0", "C1", "E_J", "L_r", "C_r", "I_r", "I_q2", "R0", "phi_ex", "M")}
            kwargs[field] = factor * kwargs[field]
            assert resonator_params(CircuitSpec(**kwargs))[0] < w0


class TestToDimensionless:
    def test_quoted_coupling(self):
        p = to_dimensionless(reference_circuit_spec(), 2e9, kappa_Hz=6e7, g_Hz=1e6)
        assert p.g == 0.0005

    def test_unit_kappa(self):
        p = to_dimensionless(reference_circuit_spec(), 2e9, kappa_Hz=2e9)
        assert p.kappa == 1.0

    def test_field_from_junction_energy(self):
        spec = reference_circuit_spec(E_J_Hz=8e9)
        p = to_dimensionless(spec, 2e9, kappa_Hz=6e7)
        assert p.J_x == 2.0

    def test_round_trip(self):
        unit = 2e9
        spec = reference_circuit_spec()
        w_Hz, g_Hz = resonator_params(spec)
        p = to_dimensionless(spec, unit, kappa_Hz=6e7, detuning_Hz=1e7)
        assert p.g * unit == pytest.approx(g_Hz, rel=1e-12)
        assert p.kappa * unit == pytest.approx(6e7, rel=1e-12)
        assert p.delta_c * unit == pytest.approx(1e7, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            to_dimensionless(reference_circuit_spec(), 0.0, kappa_Hz=6e7)


class TestDeriveCouplings:
    def test_document_fields(self):
        dc = derive_couplings(reference_circuit_spec(), 2e9, kappa_Hz=6e7)
        assert dc.ratio == pytest.approx(0.1, abs=1e-12)
        assert dc.nnn_valid
        assert dc.B2_literal / dc.B1_literal == pytest.approx(dc.ratio, rel=1e-12)
        assert dc.B2_derived / dc.B1_derived == pytest.approx(dc.ratio, rel=0.05)
        assert dc.dimensionless.g == pytest.approx(dc.g_Hz / 2e9, rel=1e-12)
        assert dc.dimensionless.M == 100

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            CircuitSpec(C0=1e-16, C1=1e-15, E_J=7.2e9, L_r=1e-10, C_r=1e-13,
                        I_r=1.2e-6, I_q2=8e-8)
        with pytest.raises(DomainError):
            CircuitSpec(C0=1e-15, C1=1e-16, E_J=-1.0, L_r=1e-10, C_r=1e-13,
                        I_r=1.2e-6, I_q2=8e-8)

    def test_default_loop_size_documented(self):
        assert reference_circuit_spec().R0 == DEFAULT_LOOP_SIZE
