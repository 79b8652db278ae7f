import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from isingcavity import tfim
from isingcavity.errors import CriticalPointError, DomainError


def elliptic_e_quadrature(m: float) -> float:
    """Independent oracle: adaptive quadrature of the defining integral."""
    val, _ = quad(lambda t: math.sqrt(1.0 - m * math.sin(t) ** 2), 0.0, math.pi / 2,
                  epsabs=1e-12, epsrel=1e-12)
    return val


def x_derivative_fd(J: float, h: float = 1e-5) -> float:
    """Richardson-extrapolated central difference of the magnetization."""
    x = tfim.magnetization_x_per_site
    d1 = (x(J + h) - x(J - h)) / (2 * h)
    d2 = (x(J + h / 2) - x(J - h / 2)) / h
    return (4 * d2 - d1) / 3


class TestEllipticE:
    def test_endpoints(self):
        assert tfim.elliptic_e(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
        assert tfim.elliptic_e(1.0) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("m", [0.05, 0.25, 0.5, 0.75, 0.9, 0.99])
    def test_against_quadrature(self, m):
        assert tfim.elliptic_e(m) == pytest.approx(elliptic_e_quadrature(m), abs=1e-10)

    @pytest.mark.parametrize("m", [0.0, 1e-8, 0.3, 0.5, 0.9, 0.999, 1 - 1e-12, 1.0])
    def test_against_scipy(self, m):
        assert tfim.elliptic_e(m) == pytest.approx(scipy.special.ellipe(m), abs=1e-12)

    @pytest.mark.parametrize("m", [0.1, 0.5, 0.9, 0.999])
    def test_k_against_scipy(self, m):
        assert tfim.elliptic_k(m) == pytest.approx(scipy.special.ellipk(m), abs=1e-12)

    @pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan"), float("inf"), "x"])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            tfim.elliptic_e(bad)
        with pytest.raises(DomainError):
            tfim.elliptic_k(bad)


class TestGroundEnergy:
    def test_zero_field(self):
        assert tfim.ground_energy_per_site(0.0) == pytest.approx(-1.0, abs=1e-15)

    def test_critical_anchor(self):
        assert tfim.ground_energy_per_site(1.0) == pytest.approx(-4 / math.pi, abs=1e-12)

    def test_against_finite_size(self):
        ref = tfim.finite_free_fermion(2.0, 4096).energy_per_site
        assert tfim.ground_energy_per_site(2.0) == pytest.approx(ref, abs=1e-6)

    def test_below_product_state_bounds(self):
        for J in np.linspace(0.0, 5.0, 41):
            e = tfim.ground_energy_per_site(float(J))
            assert e <= min(-1.0, -float(J)) + 1e-9

    @pytest.mark.parametrize("bad", [-1e-9, -2.0, float("nan"), float("inf")])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            tfim.ground_energy_per_site(bad)

    def test_array_matches_scalar(self):
        grid = np.linspace(0.0, 3.0, 17)
        arr = tfim.ground_energy_per_site(grid)
        for J, e in zip(grid, arr):
            assert e == pytest.approx(tfim.ground_energy_per_site(float(J)), abs=1e-14)


class TestMagnetization:
    def test_zero_field(self):
        assert tfim.magnetization_x_per_site(0.0) == 0.0

    def test_critical_value(self):
        assert tfim.magnetization_x_per_site(1.0) == pytest.approx(2 / math.pi, abs=1e-12)

    @pytest.mark.parametrize("J", [0.3, 1.8])
    def test_against_finite_size(self, J):
        ref = tfim.finite_free_fermion(J, 4096).x_per_site
        assert tfim.magnetization_x_per_site(J) == pytest.approx(ref, abs=1e-6)

    def test_saturation(self):
        assert tfim.magnetization_x_per_site(500.0) == pytest.approx(1.0, abs=1e-5)

    def test_energy_derivative_consistency(self):
        # x = -d(energy)/dJ away from the critical point
        h = 1e-6
        for J in [0.2, 0.6, 0.9, 1.2, 2.5]:
            fd = -(tfim.ground_energy_per_site(J + h)
                   - tfim.ground_energy_per_site(J - h)) / (2 * h)
            assert tfim.magnetization_x_per_site(J) == pytest.approx(fd, abs=1e-6)

    @given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=0.0, max_value=10.0))
    @settings(max_examples=80, deadline=None)
    def test_monotone_and_bounded(self, a, b):
        lo, hi = sorted((a, b))
        x_lo = tfim.magnetization_x_per_site(lo)
        x_hi = tfim.magnetization_x_per_site(hi)
        assert 0.0 <= x_lo <= 1.0
        assert 0.0 <= x_hi <= 1.0
        assert x_lo <= x_hi + 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            tfim.magnetization_x_per_site(-0.5)

    def test_array_matches_scalar(self):
        grid = np.linspace(0.0, 4.0, 23)
        arr = tfim.magnetization_x_per_site(grid)
        for J, x in zip(grid, arr):
            assert x == pytest.approx(tfim.magnetization_x_per_site(float(J)), abs=1e-14)


class TestMagnetizationDerivative:
    @pytest.mark.parametrize("J", [0.5, 3.0])
    def test_against_finite_differences(self, J):
        xp = tfim.magnetization_x_derivative(J)
        assert xp >= 0.0
        assert xp == pytest.approx(x_derivative_fd(J), abs=max(1e-6, 1e-4 * abs(xp)))

    def test_small_field_slope(self):
        assert tfim.magnetization_x_derivative(0.01) >= 0.0
        assert tfim.magnetization_x_derivative(0.0) == pytest.approx(0.5, abs=1e-12)

    def test_guard_band(self):
        with pytest.raises(CriticalPointError):
            tfim.magnetization_x_derivative(1.0)
        with pytest.raises(CriticalPointError):
            tfim.magnetization_x_derivative(1.0 + 1e-10)
        # just outside the band the value is finite
        assert math.isfinite(tfim.magnetization_x_derivative(1.0 + 1e-8))

    def test_domain(self):
        with pytest.raises(DomainError):
            tfim.magnetization_x_derivative(-1.0)

    def test_array_guard(self):
        with pytest.raises(CriticalPointError):
            tfim.magnetization_x_derivative(np.array([0.5, 1.0]))


class TestFiniteFreeFermion:
    def test_critical_energy(self):
        obs = tfim.finite_free_fermion(1.0, 4096)
        assert obs.energy_per_site == pytest.approx(-4 / math.pi, abs=1e-5)

    @pytest.mark.parametrize("M", [2, 8, 64])
    def test_zero_field(self, M):
        obs = tfim.finite_free_fermion(0.0, M)
        assert obs.energy_per_site == pytest.approx(-1.0, abs=1e-14)
        assert obs.x_per_site == pytest.approx(0.0, abs=1e-14)

    def test_matches_exact_diag(self):
        ff = tfim.finite_free_fermion(1.5, 8)
        ed = tfim.exact_diag(1.5, 8)
        assert ff.energy_per_site == pytest.approx(ed.energy_per_site, abs=1e-10)
        assert ff.x_per_site == pytest.approx(ed.x_per_site, abs=1e-10)

    @pytest.mark.parametrize("M", [0, -2, 3, 7, 2.5])
    def test_domain_M(self, M):
        with pytest.raises(DomainError):
            tfim.finite_free_fermion(1.0, M)

    def test_derivative_field(self):
        obs = tfim.finite_free_fermion(2.0, 256)
        assert obs.x_derivative_per_site == pytest.approx(
            tfim.magnetization_x_derivative(2.0), abs=1e-6)


class TestExactDiag:
    def test_classical_ferromagnet(self):
        obs = tfim.exact_diag(0.0, 4)
        assert obs.energy_per_site == pytest.approx(-1.0, abs=1e-12)
        assert obs.x_per_site == pytest.approx(0.0, abs=1e-12)
        assert obs.x_derivative_per_site is None

    def test_matches_free_fermion(self):
        ff = tfim.finite_free_fermion(2.0, 10)
        ed = tfim.exact_diag(2.0, 10)
        assert ed.energy_per_site == pytest.approx(ff.energy_per_site, abs=1e-10)
        assert ed.x_per_site == pytest.approx(ff.x_per_site, abs=1e-10)

    def test_near_critical_band(self):
        assert tfim.exact_diag(1.0, 8).x_per_site == pytest.approx(2 / math.pi, abs=0.05)

    def test_lanczos_sizes(self):
        ff = tfim.finite_free_fermion(1.5, 12)
        ed = tfim.exact_diag(1.5, 12)
        assert ed.energy_per_site == pytest.approx(ff.energy_per_site, abs=1e-9)

    @pytest.mark.parametrize("M", [1, 13, 0])
    def test_domain_M(self, M):
        with pytest.raises(DomainError):
            tfim.exact_diag(1.0, M)


class TestOracleAgreement:
    """The two independent finite-size routes must coincide."""

    @pytest.mark.parametrize("J", [0.0, 0.7, 1.0, 2.0])
    @pytest.mark.parametrize("M", [4, 8])
    def test_grid(self, J, M):
        ff = tfim.finite_free_fermion(J, M)
        ed = tfim.exact_diag(J, M)
        assert abs(ff.energy_per_site - ed.energy_per_site) <= 1e-10
        assert abs(ff.x_per_site - ed.x_per_site) <= 1e-10

    def test_thermodynamic_convergence(self):
        grid = np.linspace(0.0, 3.0, 26)
        for J in grid:
            closed = tfim.ground_energy_per_site(float(J))
            finite = tfim.finite_free_fermion(float(J), 4096).energy_per_site
            assert abs(closed - finite) <= 1e-5
