"""Request/response models for the compute service."""

from __future__ import annotations

import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .. import circuit, semiclassical
from ..semiclassical import ModelParams, SteadyState, SweepJump


class ModelParamsIn(BaseModel):
    J_x: float = Field(ge=0)
    g: float = Field(default=5e-4, gt=0)
    kappa: float = Field(default=0.03, gt=0)
    delta_c: float = 0.0
    M: int = Field(default=100, ge=1)
    backend: Literal["thermodynamic", "finite_free_fermion"] = "thermodynamic"

    def to_params(self) -> ModelParams:
        return ModelParams(
            J_x=self.J_x, g=self.g, kappa=self.kappa,
            delta_c=self.delta_c, M=self.M, backend=self.backend,
        )


class GridIn(BaseModel):
    """Inclusive linear grid specification."""

    start: float = Field(ge=0)
    stop: float
    count: int = Field(ge=2)

    @model_validator(mode="after")
    def _ordered(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")
        if not self.start < self.stop:
            raise ValueError("grid needs start < stop")
        return self

    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]


class SteadyStateOut(BaseModel):
    n_s: float
    eps2: float
    J_eff: float
    X: float
    c_s: float
    stable: bool
    phase: str
    stability_extrapolated: bool

    @classmethod
    def from_state(cls, s: SteadyState) -> "SteadyStateOut":
        return cls(
            n_s=s.n_s, eps2=s.eps2, J_eff=s.J_eff, X=s.X, c_s=s.c_s,
            stable=s.stable, phase=s.phase.value,
            stability_extrapolated=s.stability_extrapolated,
        )


class SteadyStatesRequest(BaseModel):
    eps2: float = Field(ge=0)
    params: ModelParamsIn


class SteadyStatesResponse(BaseModel):
    roots: list[SteadyStateOut]


class ScurveRequest(BaseModel):
    params: ModelParamsIn
    eps2_grid: GridIn


class ScurveRow(BaseModel):
    eps2: float
    n_s: float
    branch_id: int
    stable: bool
    c_s: float
    J_eff: float
    X: float
    phase: str


class ScurveResponse(BaseModel):
    rows: list[ScurveRow]


class SweepRequest(BaseModel):
    params: ModelParamsIn
    eps2_grid: GridIn
    direction: Literal["up", "down"]


class JumpOut(BaseModel):
    eps2_at_jump: float
    n_before: float
    n_after: float
    phase_before: str
    phase_after: str

    @classmethod
    def from_jump(cls, j: SweepJump) -> "JumpOut":
        return cls(
            eps2_at_jump=j.eps2_at_jump, n_before=j.n_before, n_after=j.n_after,
            phase_before=j.phase_before.value, phase_after=j.phase_after.value,
        )


class SweepResponse(BaseModel):
    direction: str
    points: list[SteadyStateOut]
    jumps: list[JumpOut]


class ThresholdsRequest(BaseModel):
    J_x: float = Field(ge=0)
    params: ModelParamsIn


class ThresholdsResponse(BaseModel):
    eps1_sq: Optional[float]
    eps2_sq: Optional[float]


class Fig2Request(BaseModel):
    params: ModelParamsIn
    J_grid: GridIn
    eps2_grid: GridIn


class SwitchFieldRow(BaseModel):
    J_x: float
    eps1_sq: float
    eps2_sq: float
    J_eff_before_up: float
    J_eff_after_up: float
    J_eff_before_down: float
    J_eff_after_down: float


class EnergyJumpRow(BaseModel):
    J_x: float
    dE_up: float
    dE_down: float


class RegionRow(BaseModel):
    J_x: float
    eps2: float
    region: str


class Fig2Response(BaseModel):
    switch_fields: list[SwitchFieldRow]
    energy_jumps: list[EnergyJumpRow]
    regions: list[RegionRow]


class CircuitSpecIn(BaseModel):
    """JSON image of :class:`isingcavity.circuit.CircuitSpec` (SI units)."""

    C0: float = Field(gt=0)
    C1: float = Field(gt=0)
    E_J: float = Field(gt=0)
    L_r: float = Field(gt=0)
    C_r: float = Field(gt=0)
    I_r: float = Field(gt=0)
    I_q2: float = Field(gt=0)
    R0: float = Field(default=circuit.DEFAULT_LOOP_SIZE, gt=0)
    phi_ex: float = math.pi / 4.0
    M: int = Field(default=100, ge=1)

    @model_validator(mode="after")
    def _capacitances(self):
        if self.C1 >= self.C0:
            raise ValueError("need C1 < C0")
        return self

    def to_spec(self) -> circuit.CircuitSpec:
        return circuit.CircuitSpec(
            C0=self.C0, C1=self.C1, E_J=self.E_J, L_r=self.L_r, C_r=self.C_r,
            I_r=self.I_r, I_q2=self.I_q2, R0=self.R0, phi_ex=self.phi_ex, M=self.M,
        )


class CircuitRequest(BaseModel):
    spec: CircuitSpecIn
    ferro_coupling_Hz: float = Field(default=2e9, gt=0)
    kappa_Hz: float = Field(default=6e7, gt=0)
    detuning_Hz: float = 0.0


class DerivedCouplingsOut(BaseModel):
    B1_literal: float
    B2_literal: float
    B1_derived: float
    B2_derived: float
    ratio: float
    nnn_valid: bool
    L_sq0: float
    omega_c0_Hz: float
    g_Hz: float
    g_dimensionless: float
    omega_c0_dimensionless: float
    params: ModelParamsIn


class TfimRequest(BaseModel):
    J: float = Field(ge=0)
    backend: Literal["thermodynamic", "finite_free_fermion"] = "thermodynamic"
    M: int = Field(default=4096, ge=2)


class TfimResponse(BaseModel):
    J: float
    energy_per_site: float
    x_per_site: float
    x_derivative_per_site: Optional[float]
    note: Optional[str] = None
