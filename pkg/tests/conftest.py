import pytest

from isingcavity.semiclassical import ModelParams


@pytest.fixture
def headline_params() -> ModelParams:
    """Headline parameter set: kappa = 0.03, g = 0.0005, resonant drive,
    100 qubits."""
    return ModelParams(J_x=1.8, g=5e-4, kappa=0.03, delta_c=0.0, M=100)
