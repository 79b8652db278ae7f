"""Self-consistent steady states of the driven resonator + Ising chain.

The resonator photon number and the chain magnetization close on each other:
the drive sustains

    n = eps2 / (kappa^2/4 + (delta_c - g X)^2),      X = M x(J_x - g n),

so steady states are the fixed points of this map, equivalently the
intersections of the drive curve eps2(n) = n (kappa^2/4 + (delta_c - g X)^2)
with a horizontal line.  Above the critical field the curve folds into an
S shape and up to three fixed points coexist; the middle one is unstable
and the jumps between the outer two produce hysteresis.

The chain magnetization is odd in its field.  The ``tfim`` kernel only
accepts J >= 0, so this module applies the signed extension
X(J_eff) = sign(J_eff) * M * x(|J_eff|) whenever strong driving pushes the
effective field below zero; the extension is exact.

Stability follows the linearized photon-number relaxation: at zero detuning
the coefficient

    c_s = 1 - 2 n^2 g^3 X' X / eps2

decides it (positive = stable), and c_s equals the normalized slope
(n/eps2) d(eps2)/dn of the drive curve, which is the criterion used when
the detuning is nonzero (such states carry ``stability_extrapolated``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Literal, Sequence

import numpy as np

from . import tfim
from .errors import DomainError, RootScanError, StepSizeError

BACKENDS = ("thermodynamic", "finite_free_fermion")

DEFAULT_SCAN_POINTS = 5000


class Phase(str, Enum):
    PARAMAGNETIC = "paramagnetic"
    FERROMAGNETIC = "ferromagnetic"


class SweepDirection(str, Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless system parameters, hbar = 1, energies in units of the
    ferromagnetic bond."""

    J_x: float
    g: float = 5e-4
    kappa: float = 0.03
    delta_c: float = 0.0
    M: int = 100
    backend: Literal["thermodynamic", "finite_free_fermion"] = "thermodynamic"

    def __post_init__(self):
        for name in ("J_x", "g", "kappa", "delta_c"):
            v = getattr(self, name)
            if not isinstance(v, (int, float, np.floating)) or not math.isfinite(float(v)):
                raise DomainError(f"{name} must be a finite real, got {v!r}")
        if self.J_x < 0:
            raise DomainError(f"J_x must be >= 0, got {self.J_x}")
        if self.g <= 0:
            raise DomainError(f"g must be > 0, got {self.g}")
        if self.kappa <= 0:
            raise DomainError(f"kappa must be > 0, got {self.kappa}")
        if not isinstance(self.M, (int, np.integer)) or isinstance(self.M, bool) or self.M < 1:
            raise DomainError(f"M must be a positive integer, got {self.M!r}")
        if self.backend not in BACKENDS:
            raise DomainError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.backend == "finite_free_fermion" and (self.M < 2 or self.M % 2):
            raise DomainError("finite_free_fermion backend needs an even M >= 2")


@dataclass(frozen=True)
class SteadyState:
    """One self-consistent solution at drive power ``eps2``."""

    n_s: float
    eps2: float
    J_eff: float
    X: float
    c_s: float
    stable: bool
    phase: Phase
    stability_extrapolated: bool = False


@dataclass(frozen=True)
class SweepJump:
    eps2_at_jump: float
    n_before: float
    n_after: float
    phase_before: Phase
    phase_after: Phase


@dataclass(frozen=True)
class SweepTrajectory:
    direction: SweepDirection
    points: list[tuple[float, SteadyState]]
    jumps: list[SweepJump]


# ---------------------------------------------------------------------------
# signed magnetization and the drive curve
# ---------------------------------------------------------------------------

def magnetization_total(J_eff, p: ModelParams):
    """X(J_eff) = sign(J_eff) * M * x(|J_eff|) under the chosen backend.

    Scalar or ndarray ``J_eff`` of either sign.
    """
    if p.backend == "thermodynamic":
        if np.ndim(J_eff) == 0:
            return math.copysign(1.0, J_eff) * p.M * tfim.magnetization_x_per_site(abs(J_eff))
        a = np.asarray(J_eff, dtype=float)
        return np.sign(a) * p.M * tfim.magnetization_x_per_site(np.abs(a))
    if np.ndim(J_eff) == 0:
        return math.copysign(1.0, J_eff) * p.M * tfim.finite_free_fermion(abs(J_eff), p.M).x_per_site
    a = np.asarray(J_eff, dtype=float)
    out = np.empty_like(a)
    flat = a.ravel()
    res = out.ravel()
    for i, v in enumerate(flat):
        res[i] = math.copysign(1.0, v) * p.M * tfim.finite_free_fermion(abs(v), p.M).x_per_site
    return out


def magnetization_total_derivative(J_eff: float, p: ModelParams) -> float:
    """X'(J_eff) = M x'(|J_eff|); even in the field since x is odd.

    Propagates the critical-point guard of the thermodynamic kernel.
    """
    if p.backend == "thermodynamic":
        return p.M * tfim.magnetization_x_derivative(abs(J_eff))
    return p.M * tfim.finite_free_fermion(abs(J_eff), p.M).x_derivative_per_site


def _denominator(n, p: ModelParams):
    """kappa^2/4 + (delta_c - g X)^2 at photon number n (scalar or array)."""
    X = magnetization_total(p.J_x - p.g * n, p)
    return 0.25 * p.kappa**2 + (p.delta_c - p.g * X) ** 2


def epsilon2_of_n(n, p: ModelParams):
    """Drive power that sustains photon number n on the steady-state curve,

        eps2(n) = n (kappa^2/4 + (delta_c - g X(J_x - g n))^2).

    Scalar or ndarray n >= 0.  Non-monotone exactly when the system is
    bistable; its local max / min are the switching thresholds.
    """
    if np.ndim(n) == 0:
        nf = float(n)
        if not math.isfinite(nf) or nf < 0:
            raise DomainError(f"photon number must be finite and >= 0, got {n!r}")
        return nf * _denominator(nf, p)
    arr = np.asarray(n, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("photon numbers must be finite and >= 0")
    return arr * _denominator(arr, p)


def residual(n: float, eps2: float, p: ModelParams) -> float:
    """Fixed-point residual eps2 / denominator(n) - n; zero at steady states."""
    nf = float(n)
    e = float(eps2)
    if not math.isfinite(nf) or nf < 0:
        raise DomainError(f"photon number must be finite and >= 0, got {n!r}")
    if not math.isfinite(e) or e < 0:
        raise DomainError(f"drive power must be finite and >= 0, got {eps2!r}")
    return e / _denominator(nf, p) - nf


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------

def stability_coefficient(n_ss: float, eps2: float, p: ModelParams) -> float:
    """Linear-stability coefficient of a steady state; positive = stable.

    At delta_c = 0 this is c_s = 1 - 2 n^2 g^3 X' X / eps2 from the
    linearized photon relaxation.  Off resonance the same number is
    produced as the normalized drive-curve slope (n/eps2) d(eps2)/dn, the
    standard fold criterion, which coincides with c_s on resonance; callers
    should treat off-resonance values as extrapolated.

    The dark steady state (eps2 = 0, n = 0) returns 1.0, its limiting value.
    """
    nf = float(n_ss)
    e = float(eps2)
    if not math.isfinite(nf) or nf < 0:
        raise DomainError(f"photon number must be finite and >= 0, got {n_ss!r}")
    if not math.isfinite(e) or e < 0:
        raise DomainError(f"drive power must be finite and >= 0, got {eps2!r}")
    if e == 0.0:
        return 1.0
    J_eff = p.J_x - p.g * nf
    X = magnetization_total(J_eff, p)
    Xp = magnetization_total_derivative(J_eff, p)
    if p.delta_c == 0.0:
        return 1.0 - 2.0 * nf * nf * p.g**3 * Xp * X / e
    d = 0.25 * p.kappa**2 + (p.delta_c - p.g * X) ** 2
    slope = d + nf * 2.0 * (p.delta_c - p.g * X) * p.g**2 * Xp
    return nf * slope / e


def _make_state(n: float, eps2: float, p: ModelParams) -> SteadyState:
    J_eff = p.J_x - p.g * n
    X = magnetization_total(J_eff, p)
    c_s = stability_coefficient(n, eps2, p)
    return SteadyState(
        n_s=n,
        eps2=eps2,
        J_eff=J_eff,
        X=X,
        c_s=c_s,
        stable=c_s > 0.0,
        phase=Phase.FERROMAGNETIC if J_eff < 1.0 else Phase.PARAMAGNETIC,
        stability_extrapolated=p.delta_c != 0.0,
    )


# ---------------------------------------------------------------------------
# root finding on the drive curve
# ---------------------------------------------------------------------------

def _golden_extremum(f: Callable[[float], float], a: float, b: float,
                     maximize: bool, tol: float) -> float:
    """Golden-section extremum location on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    sgn = -1.0 if maximize else 1.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = sgn * f(c)
    fd = sgn * f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = sgn * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = sgn * f(d)
    return 0.5 * (a + b)


def drive_curve_extrema(p: ModelParams, n_hi: float,
                        points: int = DEFAULT_SCAN_POINTS) -> list[tuple[float, float, str]]:
    """Interior local extrema of eps2(n) on [0, n_hi], golden-refined.

    Returns (n, eps2, kind) triples sorted by n, kind in {"max", "min"}.
    Empty when the curve is monotone.
    """
    if n_hi <= 0.0:
        return []
    grid = np.linspace(0.0, n_hi, max(points, 4000))
    vals = epsilon2_of_n(grid, p)
    out: list[tuple[float, float, str]] = []
    interior = np.arange(1, grid.size - 1)
    rising = vals[interior] > vals[interior - 1]
    falling = vals[interior] > vals[interior + 1]
    tol = 1e-10 * max(1.0, n_hi)
    f = lambda n: epsilon2_of_n(n, p)
    for i in interior[rising & falling]:
        n_at = _golden_extremum(f, grid[i - 1], grid[i + 1], True, tol)
        out.append((n_at, f(n_at), "max"))
    dipping = (vals[interior] < vals[interior - 1]) & (vals[interior] < vals[interior + 1])
    for i in interior[dipping]:
        n_at = _golden_extremum(f, grid[i - 1], grid[i + 1], False, tol)
        out.append((n_at, f(n_at), "min"))
    out.sort(key=lambda t: t[0])
    return out


def _bisect(f: Callable[[float], float], a: float, b: float, fa: float, fb: float) -> float:
    """Bisection to floating-point exhaustion; assumes fa, fb straddle zero."""
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (fa < 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return 0.5 * (a + b)


def scan_n_max(eps2: float, p: ModelParams) -> float:
    """Upper end of the root-scan interval: covers the whole J_eff >= 0
    region plus ample headroom over the global bound 4 eps2 / kappa^2."""
    return p.J_x / p.g + 10.0 * eps2 / (0.25 * p.kappa**2)


def find_steady_states(eps2: float, p: ModelParams, *,
                       scan_points: int = DEFAULT_SCAN_POINTS) -> list[SteadyState]:
    """All steady states at drive power eps2, sorted by photon number.

    The drive curve is scanned on [0, n_max] for its fold points; each
    monotone segment then holds at most one crossing of the level eps2,
    located by bisection to machine precision.  Near-coincident roots
    (fold tangencies) are deduplicated within 1e-6 n_max.  Generic drives
    give an odd count (1 or 3) with stability alternating along the curve.
    """
    e = float(eps2)
    if not math.isfinite(e) or e < 0.0:
        raise DomainError(f"drive power must be finite and >= 0, got {eps2!r}")
    if e == 0.0:
        return [_make_state(0.0, 0.0, p)]
    n_max = scan_n_max(e, p)
    extrema = drive_curve_extrema(p, n_max, points=scan_points)
    cuts = [0.0] + [t[0] for t in extrema] + [n_max]
    f = lambda n: epsilon2_of_n(n, p) - e
    fvals = [f(c) for c in cuts]
    roots: list[float] = []
    for (a, b, fa, fb) in zip(cuts, cuts[1:], fvals, fvals[1:]):
        if fa == 0.0 and a not in roots:
            roots.append(a)
        if fa * fb < 0.0:
            roots.append(_bisect(f, a, b, fa, fb))
    if fvals[-1] == 0.0:
        roots.append(cuts[-1])
    if not roots:
        raise RootScanError(
            f"no steady state bracketed on [0, {n_max:g}] at eps2 = {e:g}"
        )
    roots.sort()
    dedup: list[float] = []
    for r in roots:
        if not dedup or r - dedup[-1] > 1e-6 * n_max:
            dedup.append(r)
    return [_make_state(r, e, p) for r in dedup]


# ---------------------------------------------------------------------------
# hysteresis sweeps and relaxation
# ---------------------------------------------------------------------------

def hysteresis_sweep(eps2_grid: Sequence[float], p: ModelParams,
                     direction: SweepDirection | str) -> SweepTrajectory:
    """Follow the stable branch along a monotone drive grid.

    At each grid point the stable root closest in n to the previously
    selected one is kept (ties prefer the root preserving the current
    phase).  A jump is recorded when the selection moves by more than
    10 * (local eps2 step) / (kappa^2/4), which is far above the response
    of a smooth branch but far below a branch-to-branch transition.
    """
    direction = SweepDirection(direction)
    grid = [float(e) for e in eps2_grid]
    if not grid:
        raise DomainError("sweep grid must not be empty")
    if any(not math.isfinite(e) or e < 0.0 for e in grid):
        raise DomainError("sweep grid must be finite and >= 0")
    diffs = [b - a for a, b in zip(grid, grid[1:])]
    if direction is SweepDirection.UP and any(d <= 0 for d in diffs):
        raise DomainError("up sweep needs a strictly increasing grid")
    if direction is SweepDirection.DOWN and any(d >= 0 for d in diffs):
        raise DomainError("down sweep needs a strictly decreasing grid")

    points: list[tuple[float, SteadyState]] = []
    jumps: list[SweepJump] = []
    prev: SteadyState | None = None
    for i, e in enumerate(grid):
        roots = find_steady_states(e, p)
        stables = [r for r in roots if r.stable] or roots
        if prev is None:
            sel = stables[0] if direction is SweepDirection.UP else stables[-1]
        else:
            best = min(abs(r.n_s - prev.n_s) for r in stables)
            tied = [r for r in stables if abs(r.n_s - prev.n_s) == best]
            sel = tied[0]
            if len(tied) > 1:
                same_phase = [r for r in tied if r.phase == prev.phase]
                if same_phase:
                    sel = same_phase[0]
            threshold = 10.0 * abs(grid[i] - grid[i - 1]) / (0.25 * p.kappa**2)
            if abs(sel.n_s - prev.n_s) > threshold:
                jumps.append(SweepJump(e, prev.n_s, sel.n_s, prev.phase, sel.phase))
        points.append((e, sel))
        prev = sel
    return SweepTrajectory(direction, points, jumps)


def relaxation_step(n: float, eps2: float, p: ModelParams, dt: float) -> float:
    """One explicit step of the adiabatic photon relaxation

        dn/dt = kappa (n_target(n) - n),
        n_target(n) = eps2 / (kappa^2/4 + (delta_c - g X(J_x - g n))^2),

    which shares its fixed points and their linear stability with the
    steady-state analysis.  Requires dt * kappa < 0.1; the result is
    clamped at zero.
    """
    nf = float(n)
    e = float(eps2)
    dtf = float(dt)
    if not math.isfinite(nf) or nf < 0:
        raise DomainError(f"photon number must be finite and >= 0, got {n!r}")
    if not math.isfinite(e) or e < 0:
        raise DomainError(f"drive power must be finite and >= 0, got {eps2!r}")
    if not math.isfinite(dtf) or dtf <= 0:
        raise DomainError(f"dt must be > 0, got {dt!r}")
    if dtf * p.kappa >= 0.1:
        raise StepSizeError(f"dt * kappa = {dtf * p.kappa:g} >= 0.1 is too coarse")
    target = e / _denominator(nf, p)
    return max(0.0, nf + dtf * p.kappa * (target - nf))
