"""Plain request -> response functions behind the HTTP endpoints.

The CLI calls these directly when no remote server is configured, so they
carry the complete behavior; the FastAPI layer only adds routing and error
translation.
"""

from __future__ import annotations

from .. import circuit, phases, semiclassical, tfim
from ..errors import CriticalPointError, NoBistabilityError
from . import schemas as sc


def compute_steady_states(req: sc.SteadyStatesRequest) -> sc.SteadyStatesResponse:
    roots = semiclassical.find_steady_states(req.eps2, req.params.to_params())
    return sc.SteadyStatesResponse(roots=[sc.SteadyStateOut.from_state(r) for r in roots])


def compute_scurve(req: sc.ScurveRequest) -> sc.ScurveResponse:
    p = req.params.to_params()
    rows: list[sc.ScurveRow] = []
    for e in req.eps2_grid.values():
        for branch_id, r in enumerate(semiclassical.find_steady_states(e, p)):
            rows.append(sc.ScurveRow(
                eps2=r.eps2, n_s=r.n_s, branch_id=branch_id, stable=r.stable,
                c_s=r.c_s, J_eff=r.J_eff, X=r.X, phase=r.phase.value,
            ))
    return sc.ScurveResponse(rows=rows)


def compute_sweep(req: sc.SweepRequest) -> sc.SweepResponse:
    p = req.params.to_params()
    grid = req.eps2_grid.values()
    if req.direction == "down":
        grid = grid[::-1]
    traj = semiclassical.hysteresis_sweep(grid, p, req.direction)
    return sc.SweepResponse(
        direction=traj.direction.value,
        points=[sc.SteadyStateOut.from_state(s) for _, s in traj.points],
        jumps=[sc.JumpOut.from_jump(j) for j in traj.jumps],
    )


def compute_thresholds(req: sc.ThresholdsRequest) -> sc.ThresholdsResponse:
    e1, e2 = phases.switching_thresholds(req.J_x, req.params.to_params())
    return sc.ThresholdsResponse(eps1_sq=e1, eps2_sq=e2)


def compute_fig2(req: sc.Fig2Request) -> sc.Fig2Response:
    p = req.params.to_params()
    switch_rows: list[sc.SwitchFieldRow] = []
    energy_rows: list[sc.EnergyJumpRow] = []
    bounds = phases.phase_boundaries(req.J_grid.values(), p)
    for J_x, e1, e2 in zip(bounds.J_grid, bounds.eps1_sq, bounds.eps2_sq):
        if e1 is None or e2 is None:
            continue
        try:
            bu, au, bd, ad = phases.effective_field_at_switch(J_x, p)
            de_up, de_down = phases.energy_jump(J_x, p)
        except NoBistabilityError:
            continue
        switch_rows.append(sc.SwitchFieldRow(
            J_x=J_x, eps1_sq=e1, eps2_sq=e2,
            J_eff_before_up=bu, J_eff_after_up=au,
            J_eff_before_down=bd, J_eff_after_down=ad,
        ))
        energy_rows.append(sc.EnergyJumpRow(J_x=J_x, dE_up=de_up, dE_down=de_down))
    cells = phases.phase_diagram(req.J_grid.values(), req.eps2_grid.values(), p)
    regions = [sc.RegionRow(J_x=c.J_x, eps2=c.eps2, region=c.region.value) for c in cells]
    return sc.Fig2Response(switch_fields=switch_rows, energy_jumps=energy_rows, regions=regions)


def compute_circuit(req: sc.CircuitRequest) -> sc.DerivedCouplingsOut:
    derived = circuit.derive_couplings(
        req.spec.to_spec(), req.ferro_coupling_Hz, req.kappa_Hz, req.detuning_Hz,
    )
    p = derived.dimensionless
    return sc.DerivedCouplingsOut(
        B1_literal=derived.B1_literal,
        B2_literal=derived.B2_literal,
        B1_derived=derived.B1_derived,
        B2_derived=derived.B2_derived,
        ratio=derived.ratio,
        nnn_valid=derived.nnn_valid,
        L_sq0=derived.L_sq0,
        omega_c0_Hz=derived.omega_c0_Hz,
        g_Hz=derived.g_Hz,
        g_dimensionless=p.g,
        omega_c0_dimensionless=derived.omega_c0_Hz / req.ferro_coupling_Hz,
        params=sc.ModelParamsIn(
            J_x=p.J_x, g=p.g, kappa=p.kappa, delta_c=p.delta_c,
            M=p.M, backend=p.backend,
        ),
    )


def compute_tfim(req: sc.TfimRequest) -> sc.TfimResponse:
    if req.backend == "finite_free_fermion":
        obs = tfim.finite_free_fermion(req.J, req.M)
        return sc.TfimResponse(
            J=req.J,
            energy_per_site=obs.energy_per_site,
            x_per_site=obs.x_per_site,
            x_derivative_per_site=obs.x_derivative_per_site,
        )
    energy = tfim.ground_energy_per_site(req.J)
    x = tfim.magnetization_x_per_site(req.J)
    note = None
    try:
        xp = tfim.magnetization_x_derivative(req.J)
    except CriticalPointError:
        xp = None
        note = "x' diverges at the critical point; no value inside the guard band"
    return sc.TfimResponse(
        J=req.J, energy_per_site=energy, x_per_site=x,
        x_derivative_per_site=xp, note=note,
    )
