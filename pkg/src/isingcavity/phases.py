"""Switching thresholds, energy jumps and the (J_x, eps2) phase diagram.

For each transverse field the drive curve eps2(n) is scanned for its local
maximum (the threshold eps2_sq where the low-photon branch dies and the
system jumps up) and local minimum (eps1_sq, where the high branch dies on
the way down).  Between the two thresholds both branches coexist and the
realized phase depends on the drive history, so those cells are labelled
bistable rather than being assigned a side.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from . import semiclassical, tfim
from .errors import DomainError, NoBistabilityError
from .semiclassical import ModelParams, _bisect, epsilon2_of_n

THRESHOLD_SCAN_POINTS = 20001

THREADS_ENV = "ISINGCAVITY_THREADS"


class Region(str, Enum):
    PARAMAGNETIC = "paramagnetic"
    FERROMAGNETIC = "ferromagnetic"
    BISTABLE = "bistable"


@dataclass(frozen=True)
class PhaseBoundaries:
    """Threshold curves over a grid of transverse fields; entries are None
    where the drive curve is monotone (no bistable window)."""

    J_grid: tuple[float, ...]
    eps1_sq: tuple[float | None, ...]
    eps2_sq: tuple[float | None, ...]


@dataclass(frozen=True)
class RegionCell:
    J_x: float
    eps2: float
    region: Region


@dataclass(frozen=True)
class SwitchingWindow:
    """Fold points of one drive curve: locations in n and drive powers."""

    eps1_sq: float
    eps2_sq: float
    n_at_eps1: float
    n_at_eps2: float


def _max_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _window(J_x: float, p: ModelParams,
            scan_points: int = THRESHOLD_SCAN_POINTS) -> SwitchingWindow | None:
    """Fold points of the drive curve at field J_x, or None if monotone.

    All fold points sit at J_eff in (0, J_x): for J_eff < 0 the detuning
    term grows with n again and the curve rises monotonically, so the scan
    stops at n = J_x / g.
    """
    if J_x == 0.0:
        return None
    q = replace(p, J_x=J_x)
    ext = semiclassical.drive_curve_extrema(q, J_x / p.g, points=scan_points)
    maxima = [(n, v) for n, v, kind in ext if kind == "max"]
    minima = [(n, v) for n, v, kind in ext if kind == "min"]
    if not maxima and not minima:
        return None
    if maxima and minima:
        n2, e2 = max(maxima, key=lambda t: t[1])
        n1, e1 = min(minima, key=lambda t: t[1])
    else:
        # single extremum: window birth/death tangency, both thresholds meet
        (n1, e1) = (n2, e2) = (maxima or minima)[0]
    return SwitchingWindow(eps1_sq=e1, eps2_sq=e2, n_at_eps1=n1, n_at_eps2=n2)


def switching_thresholds(J_x: float, p: ModelParams, *,
                         scan_points: int = THRESHOLD_SCAN_POINTS
                         ) -> tuple[float | None, float | None]:
    """(eps1_sq, eps2_sq) switching thresholds at field J_x.

    eps2_sq is the local maximum of the drive curve along the low-photon
    branch (upward jump), eps1_sq the local minimum along the high branch
    (downward jump); both golden-refined.  (None, None) when the curve is
    strictly monotone.

    Close to the window-birth field the curve can carry an extra narrow
    fold pair pinned at J_eff = 1 (the derivative of the magnetization
    diverges there); the returned pair is then the outer envelope:
    strictly below eps1_sq or above eps2_sq the state is unique, while the
    window interior may be subdivided by the interior folds.  For fields
    comfortably above the birth point the curve is a plain S and the pair
    is exact.
    """
    Jf = float(J_x)
    if not math.isfinite(Jf) or Jf < 0.0:
        raise DomainError(f"J_x must be finite and >= 0, got {J_x!r}")
    win = _window(Jf, p, scan_points)
    if win is None:
        return (None, None)
    return (win.eps1_sq, win.eps2_sq)


def _root_on_segment(q: ModelParams, level: float, a: float, b: float) -> float:
    f = lambda n: epsilon2_of_n(n, q) - level
    return _bisect(f, a, b, f(a), f(b))


def _jump_fields(J_x: float, p: ModelParams, win: SwitchingWindow) -> tuple[float, float, float, float]:
    """Effective fields right before/after each jump, (up_before, up_after,
    down_before, down_after)."""
    q = replace(p, J_x=J_x)
    # landing point of the upward jump: high branch at the drive eps2_sq
    n_hi = semiclassical.scan_n_max(win.eps2_sq, q)
    n_up_after = _root_on_segment(q, win.eps2_sq, win.n_at_eps1, n_hi)
    # landing point of the downward jump: low branch at the drive eps1_sq
    n_down_after = _root_on_segment(q, win.eps1_sq, 0.0, win.n_at_eps2)
    return (
        J_x - p.g * win.n_at_eps2,
        J_x - p.g * n_up_after,
        J_x - p.g * win.n_at_eps1,
        J_x - p.g * n_down_after,
    )


def effective_field_at_switch(J_x: float, p: ModelParams
                              ) -> tuple[float, float, float, float]:
    """J_eff on either side of both jumps:
    (before_up, after_up, before_down, after_down).

    The field never crosses 1 continuously: before the upward jump it sits
    above 1, after it below, and conversely for the downward jump.
    """
    Jf = float(J_x)
    if not math.isfinite(Jf) or Jf < 0.0:
        raise DomainError(f"J_x must be finite and >= 0, got {J_x!r}")
    win = _window(Jf, p)
    if win is None:
        raise NoBistabilityError(f"no switching window at J_x = {Jf:g}")
    return _jump_fields(Jf, p, win)


def _energy_fn(backend: str, M_backend: int):
    if backend == "thermodynamic":
        return lambda J: tfim.ground_energy_per_site(abs(J))
    if backend == "finite_free_fermion":
        return lambda J: tfim.finite_free_fermion(abs(J), M_backend).energy_per_site
    raise DomainError(f"unknown energy backend {backend!r}")


def energy_jump(J_x: float, p: ModelParams, *, energy_backend: str = "thermodynamic",
                M_backend: int = 4096) -> tuple[float, float]:
    """Ground-state energy change per site across the two jumps,
    (dE_up at eps2_sq, dE_down at eps1_sq), both strictly positive.

    The chain energy is even in its field, so values are evaluated at
    |J_eff| when strong driving overshoots past zero.
    """
    Jf = float(J_x)
    if not math.isfinite(Jf) or Jf < 0.0:
        raise DomainError(f"J_x must be finite and >= 0, got {J_x!r}")
    win = _window(Jf, p)
    if win is None:
        raise NoBistabilityError(f"no switching window at J_x = {Jf:g}")
    up_before, up_after, down_before, down_after = _jump_fields(Jf, p, win)
    eg = _energy_fn(energy_backend, M_backend)
    return (abs(eg(up_after) - eg(up_before)), abs(eg(down_after) - eg(down_before)))


def phase_boundaries(J_values: Sequence[float], p: ModelParams) -> PhaseBoundaries:
    """Threshold curves eps1_sq(J_x), eps2_sq(J_x) over a field grid,
    computed in parallel (thread count from ISINGCAVITY_THREADS, default
    all cores)."""
    Js = [float(j) for j in J_values]
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        pairs = list(pool.map(lambda j: switching_thresholds(j, p), Js))
    return PhaseBoundaries(
        J_grid=tuple(Js),
        eps1_sq=tuple(t[0] for t in pairs),
        eps2_sq=tuple(t[1] for t in pairs),
    )


def _classify_no_window(J_x: float, eps2: float, p: ModelParams) -> Region:
    q = replace(p, J_x=J_x)
    roots = semiclassical.find_steady_states(eps2, q)
    stable = [r for r in roots if r.stable] or roots
    if stable[0].phase is semiclassical.Phase.PARAMAGNETIC:
        return Region.PARAMAGNETIC
    return Region.FERROMAGNETIC


def phase_diagram(J_values: Sequence[float], eps2_values: Sequence[float],
                  p: ModelParams) -> list[RegionCell]:
    """Region label of every (J_x, eps2) cell on the product grid.

    Columns with a switching window classify by threshold comparison
    (paramagnetic below eps1_sq, ferromagnetic above eps2_sq, bistable in
    the closed window).  Monotone columns take the phase of their unique
    steady state.  Cells are returned row-major in (J, eps2) order.
    """
    Js = [float(j) for j in J_values]
    Es = [float(e) for e in eps2_values]
    if any(not math.isfinite(j) or j < 0 for j in Js) or any(
            not math.isfinite(e) or e < 0 for e in Es):
        raise DomainError("phase-diagram grids must be finite and >= 0")

    def column(J_x: float) -> list[RegionCell]:
        win = _window(J_x, p)
        cells = []
        for e in Es:
            if win is None:
                region = _classify_no_window(J_x, e, p)
            elif e < win.eps1_sq:
                region = Region.PARAMAGNETIC
            elif e > win.eps2_sq:
                region = Region.FERROMAGNETIC
            else:
                region = Region.BISTABLE
            cells.append(RegionCell(J_x, e, region))
        return cells

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        columns = list(pool.map(column, Js))
    return [cell for col in columns for cell in col]
