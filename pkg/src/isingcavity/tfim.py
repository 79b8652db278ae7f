"""Exact ground-state observables of the periodic transverse-field Ising chain.

The chain Hamiltonian, with the ferromagnetic bond strength fixed to one
(energies are dimensionless throughout),

    H = -J sum_i s^x_i - sum_i s^z_i s^z_{i+1}     (Pauli matrices, periodic)

is quadratic in fermions after the Jordan-Wigner mapping, which yields
closed forms for the ground-state energy density and the transverse
magnetization.  Everything here is normalized per site:

* ``ground_energy_per_site(J)``      -(2/pi)(1+J) E(4J/(1+J)^2)
* ``magnetization_x_per_site(J)``    x(J) = -d/dJ of the energy density
* ``magnetization_x_derivative(J)``  x'(J); diverges logarithmically at J = 1

The complete elliptic integrals are evaluated with the arithmetic-geometric
mean, which converges quadratically and keeps the kernel dependency-free.
Two finite-size routes act as oracles for the closed forms and for each
other: ``finite_free_fermion`` sums the antiperiodic-sector momentum modes
(the sector that contains the finite-size ground state), ``exact_diag``
diagonalizes the full 2^M Hamiltonian.

All entry points accept J >= 0 only.  The odd extension x(-J) = -x(J) is
exact but intentionally left to callers, so the kernel domain stays
unambiguous.  ``magnetization_x_derivative`` refuses a guard band
|J - 1| < 1e-9 rather than returning a huge float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import CriticalPointError, DomainError

CRITICAL_FIELD = 1.0
CRITICAL_GUARD = 1e-9

# Below these the closed forms hit 0/0 cancellation; switch to the leading
# odd series x = J/2 + J^3/16, x' = 1/2 + 3J^2/16 (error O(J^5), O(J^4)).
_X_SERIES_CUTOFF = 1e-4
_XPRIME_SERIES_CUTOFF = 1e-3

_TWO_OVER_PI = 2.0 / math.pi


@dataclass(frozen=True)
class ChainObservables:
    """Per-site ground-state observables of a finite chain.

    ``x_derivative_per_site`` is only available from the free-fermion route;
    the brute-force diagonalization leaves it ``None``.
    """

    energy_per_site: float
    x_per_site: float
    x_derivative_per_site: float | None = None


def _require_finite_scalar(value, name: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(out):
        raise DomainError(f"{name} must be finite, got {out}")
    return out


def _require_field(J) -> float:
    J = _require_finite_scalar(J, "J")
    if J < 0.0:
        raise DomainError(f"transverse field must be >= 0, got {J}")
    return J


# ---------------------------------------------------------------------------
# complete elliptic integrals, parameter (m = k^2) convention
# ---------------------------------------------------------------------------

def _agm_ke(m: float, mc: float) -> tuple[float, float]:
    """K(m), E(m) by the AGM.  ``mc`` is the complement 1 - m, passed in by
    the caller so that values extremely close to m = 1 keep full precision
    (forming 1 - m there is catastrophic)."""
    if mc < 1e-15:
        # K ~ ln(4/sqrt(mc)) with error O(mc ln mc); E(1) = 1 exactly.
        k = math.inf if mc <= 0.0 else math.log(4.0) - 0.5 * math.log(mc)
        return k, 1.0
    a = 1.0
    b = math.sqrt(mc)
    csum = 0.5 * m  # running sum of 2^{n-1} c_n^2, n = 0 term is m/2
    pow2 = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pow2 *= 2.0
        csum += pow2 * c * c
        if c < 1e-16:
            break
    k = math.pi / (a + b)
    return k, k * (1.0 - csum)


def _agm_ke_arr(m: np.ndarray, mc: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized twin of :func:`_agm_ke`."""
    a = np.ones_like(m)
    b = np.sqrt(np.maximum(mc, 5e-324))
    csum = 0.5 * m
    pow2 = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        pow2 *= 2.0
        csum = csum + pow2 * c * c
        if np.all(c < 1e-16):
            break
    k = np.pi / (a + b)
    e = k * (1.0 - csum)
    tiny = mc < 1e-15
    if np.any(tiny):
        with np.errstate(divide="ignore"):
            k_asym = math.log(4.0) - 0.5 * np.log(mc)
        k = np.where(tiny, np.where(mc > 0.0, k_asym, np.inf), k)
        e = np.where(tiny, 1.0, e)
    return k, e


def elliptic_e(m: float) -> float:
    """Complete elliptic integral of the second kind,

        E(m) = integral_0^{pi/2} sqrt(1 - m sin^2 t) dt,   0 <= m <= 1,

    in the parameter convention (m is the squared modulus).  Absolute error
    is below 1e-12.
    """
    m = _require_finite_scalar(m, "m")
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"elliptic parameter must lie in [0, 1], got {m}")
    return _agm_ke(m, 1.0 - m)[1]


def elliptic_k(m: float) -> float:
    """Complete elliptic integral of the first kind; +inf at m = 1."""
    m = _require_finite_scalar(m, "m")
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"elliptic parameter must lie in [0, 1], got {m}")
    return _agm_ke(m, 1.0 - m)[0]


# ---------------------------------------------------------------------------
# thermodynamic-limit observables
# ---------------------------------------------------------------------------

def _elliptic_args(J):
    """Parameter m = 4J/(1+J)^2 of the energy formula and its exact
    complement mc = ((1-J)/(1+J))^2."""
    onep = 1.0 + J
    m = 4.0 * J / (onep * onep)
    mc = ((1.0 - J) / onep) ** 2
    return m, mc


def ground_energy_per_site(J):
    """Ground-state energy density -(2/pi)(1+J) E(4J/(1+J)^2), J >= 0.

    Accepts a float or an ndarray.  Anchors: -1 at J = 0, -4/pi at J = 1.
    """
    if np.ndim(J) == 0:
        Jf = _require_field(J)
        m, mc = _elliptic_args(Jf)
        e = _agm_ke(min(m, 1.0), mc)[1]
        return -_TWO_OVER_PI * (1.0 + Jf) * e
    arr = _require_field_array(J)
    m, mc = _elliptic_args(arr)
    e = _agm_ke_arr(np.minimum(m, 1.0), mc)[1]
    return -_TWO_OVER_PI * (1.0 + arr) * e


def magnetization_x_per_site(J):
    """Transverse magnetization density x(J) = <s^x> in [0, 1], J >= 0.

    Evaluated by analytic differentiation of the energy density,

        x(J) = (2/pi) [ E(m) + (E(m) - K(m)) (1 - J) / (2J) ],

    with the small-J series below 1e-4 where the closed form cancels.
    Accepts a float or an ndarray; continuous and nondecreasing, x(0) = 0,
    x(1) = 2/pi, x -> 1 as J -> inf.
    """
    if np.ndim(J) == 0:
        return _x_scalar(_require_field(J))
    return _x_arr(_require_field_array(J))


def magnetization_x_derivative(J):
    """Slope x'(J) >= 0 of the magnetization density,

        x'(J) = (2/pi) / (J(1+J)) [ (K - E)(1 + J^2)/(2J) - E ],

    with the small-J series below 1e-3.  Diverges logarithmically at the
    critical point; requests inside |J - 1| < 1e-9 raise
    :class:`CriticalPointError` instead of returning a huge float.
    """
    if np.ndim(J) == 0:
        Jf = _require_field(J)
        if abs(Jf - CRITICAL_FIELD) < CRITICAL_GUARD:
            raise CriticalPointError(
                f"x'(J) diverges at J = 1; refusing |J - 1| < {CRITICAL_GUARD:g} (got J = {Jf!r})"
            )
        return _xp_scalar(Jf)
    arr = _require_field_array(J)
    if np.any(np.abs(arr - CRITICAL_FIELD) < CRITICAL_GUARD):
        raise CriticalPointError(
            f"x'(J) diverges at J = 1; refusing |J - 1| < {CRITICAL_GUARD:g}"
        )
    return _xp_arr(arr)


def _require_field_array(J) -> np.ndarray:
    arr = np.asarray(J, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("transverse field array must be finite")
    if np.any(arr < 0.0):
        raise DomainError("transverse field array must be >= 0")
    return arr


def _x_scalar(J: float) -> float:
    if J < _X_SERIES_CUTOFF:
        return 0.5 * J * (1.0 + 0.125 * J * J)
    m, mc = _elliptic_args(J)
    k, e = _agm_ke(min(m, 1.0), mc)
    if math.isinf(k):  # exactly at J = 1 the (1 - J) factor kills the K term
        return _TWO_OVER_PI
    x = _TWO_OVER_PI * (e + (e - k) * (1.0 - J) / (2.0 * J))
    return min(max(x, 0.0), 1.0)


def _x_arr(J: np.ndarray) -> np.ndarray:
    small = J < _X_SERIES_CUTOFF
    Jsafe = np.where(small, 0.5, J)
    m, mc = _elliptic_args(Jsafe)
    k, e = _agm_ke_arr(np.minimum(m, 1.0), mc)
    with np.errstate(invalid="ignore"):
        x = _TWO_OVER_PI * (e + (e - k) * (1.0 - Jsafe) / (2.0 * Jsafe))
    x = np.where(np.isinf(k), _TWO_OVER_PI, x)
    series = 0.5 * J * (1.0 + 0.125 * J * J)
    return np.clip(np.where(small, series, x), 0.0, 1.0)


def _xp_scalar(J: float) -> float:
    if J < _XPRIME_SERIES_CUTOFF:
        return 0.5 + 0.1875 * J * J
    m, mc = _elliptic_args(J)
    k, e = _agm_ke(min(m, 1.0), mc)
    val = _TWO_OVER_PI / (J * (1.0 + J)) * ((k - e) * (1.0 + J * J) / (2.0 * J) - e)
    return max(val, 0.0)


def _xp_arr(J: np.ndarray) -> np.ndarray:
    small = J < _XPRIME_SERIES_CUTOFF
    Jsafe = np.where(small, 0.5, J)
    m, mc = _elliptic_args(Jsafe)
    k, e = _agm_ke_arr(np.minimum(m, 1.0), mc)
    val = _TWO_OVER_PI / (Jsafe * (1.0 + Jsafe)) * (
        (k - e) * (1.0 + Jsafe * Jsafe) / (2.0 * Jsafe) - e
    )
    series = 0.5 + 0.1875 * J * J
    return np.maximum(np.where(small, series, val), 0.0)


# ---------------------------------------------------------------------------
# finite-size oracles
# ---------------------------------------------------------------------------

def finite_free_fermion(J, M: int) -> ChainObservables:
    """Free-fermion observables of the finite periodic chain.

    Sums the M antiperiodic momenta k = +-(2m-1) pi / M, m = 1..M/2 (the
    even-parity sector, which holds the finite-size ground state for J > 0)
    with single-mode energy Lambda_k = sqrt(J^2 + 2 J cos k + 1):

        energy/site = -(1/M) sum_k Lambda_k
        x/site      =  (1/M) sum_k (J + cos k) / Lambda_k
        x'/site     =  (1/M) sum_k sin^2 k / Lambda_k^3

    M must be even and >= 2.  Converges to the thermodynamic-limit
    functions as M grows (exponentially fast away from J = 1).
    """
    Jf = _require_field(J)
    if not isinstance(M, (int, np.integer)) or isinstance(M, bool):
        raise DomainError(f"chain length must be an integer, got {M!r}")
    if M < 2 or M % 2 != 0:
        raise DomainError(f"chain length must be even and >= 2, got {M}")
    k = (2.0 * np.arange(1, M // 2 + 1) - 1.0) * (math.pi / M)
    cos_k = np.cos(k)
    lam = np.sqrt(Jf * Jf + 2.0 * Jf * cos_k + 1.0)
    energy = -2.0 * float(lam.sum()) / M
    x = 2.0 * float(((Jf + cos_k) / lam).sum()) / M
    xp = 2.0 * float((np.sin(k) ** 2 / lam**3).sum()) / M
    return ChainObservables(energy, min(max(x, 0.0), 1.0), xp)


_EXACT_DIAG_MAX = 12
_DENSE_MAX = 10


def _chain_operators(J: float, M: int):
    """Sparse H and the total s^x operator on the full 2^M space."""
    dim = 1 << M
    states = np.arange(dim, dtype=np.int64)
    bits = (states[:, None] >> np.arange(M)) & 1
    antiparallel = bits ^ np.roll(bits, -1, axis=1)
    diag = -(M - 2.0 * antiparallel.sum(axis=1))  # -sum_i z_i z_{i+1}
    rows = np.repeat(states, M)
    cols = (states[:, None] ^ (np.int64(1) << np.arange(M))).ravel()
    flip = scipy.sparse.coo_matrix(
        (np.ones(rows.size), (rows, cols)), shape=(dim, dim)
    ).tocsr()
    ham = (-J) * flip + scipy.sparse.diags(diag)
    return ham.tocsr(), flip


def exact_diag(J, M: int) -> ChainObservables:
    """Brute-force ground state on the full 2^M Hilbert space (periodic
    bonds), for cross-checking the free-fermion route.  2 <= M <= 12.

    Dense diagonalization up to M = 10; Lanczos with a deterministic
    even-parity start vector for M = 11, 12.  The derivative field is not
    computed here.
    """
    Jf = _require_field(J)
    if not isinstance(M, (int, np.integer)) or isinstance(M, bool):
        raise DomainError(f"chain length must be an integer, got {M!r}")
    if not 2 <= M <= _EXACT_DIAG_MAX:
        raise DomainError(f"exact diagonalization supports 2 <= M <= {_EXACT_DIAG_MAX}, got {M}")
    ham, flip = _chain_operators(Jf, int(M))
    if M <= _DENSE_MAX:
        w, v = scipy.linalg.eigh(ham.toarray(), subset_by_index=(0, 0))
        e0, psi = float(w[0]), v[:, 0]
    else:
        dim = ham.shape[0]
        v0 = np.full(dim, 1.0 / math.sqrt(dim))
        w, v = scipy.sparse.linalg.eigsh(ham, k=1, which="SA", v0=v0, maxiter=20000)
        e0, psi = float(w[0]), v[:, 0]
    x = float(psi @ (flip @ psi)) / M
    return ChainObservables(e0 / M, min(max(x, 0.0), 1.0), None)
