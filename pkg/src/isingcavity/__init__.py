"""Semiclassical steady states of a driven superconducting resonator
coupled to a transverse-field Ising qubit array."""

from .circuit import (
    CircuitSpec,
    DerivedCouplings,
    derive_couplings,
    inverse_capacitance,
    ising_couplings,
    resonator_params,
    squid_inductance,
    to_dimensionless,
)
from .errors import (
    CriticalPointError,
    DomainError,
    InductanceDivergenceError,
    NoBistabilityError,
    RootScanError,
    StepSizeError,
)
from .phases import (
    PhaseBoundaries,
    Region,
    RegionCell,
    effective_field_at_switch,
    energy_jump,
    phase_boundaries,
    phase_diagram,
    switching_thresholds,
)
from .semiclassical import (
    ModelParams,
    Phase,
    SteadyState,
    SweepDirection,
    SweepJump,
    SweepTrajectory,
    epsilon2_of_n,
    find_steady_states,
    hysteresis_sweep,
    relaxation_step,
    residual,
    stability_coefficient,
)
from .tfim import (
    ChainObservables,
    elliptic_e,
    elliptic_k,
    exact_diag,
    finite_free_fermion,
    ground_energy_per_site,
    magnetization_x_derivative,
    magnetization_x_per_site,
)

__version__ = "0.1.0"
