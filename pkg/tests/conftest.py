"""Shared fixtures: the three model families at their reference parameters."""

import pytest

from aqc_cavity.hamiltonians import BdGModel, DenseModel, TLSModel, build_ec, build_tls
from aqc_cavity.hamiltonians.exact_cover import parse_ec_clauses
from aqc_cavity.models.domain import CavityParams, ModelKind, ModelSpec

EC_CLAUSES = "1 2 5; 2 3 6; 3 4 6; 1 3 5; 2 5 6"
PRESETS = [
    "chain-detuning-sweep",
    "chain-drive-sweep",
    "chain-protocol-sweep",
    "ec-protocol",
    "tls-protocol-sweep",
]


@pytest.fixture
def tls_spec() -> ModelSpec:
    return ModelSpec(kind=ModelKind.TLS, b_x=1.0, j0=0.1)


@pytest.fixture
def tls_model(tls_spec: ModelSpec) -> TLSModel:
    return build_tls(tls_spec)


@pytest.fixture
def tls_cavity() -> CavityParams:
    return CavityParams(delta_c=-0.05, kappa=0.1, g=0.075)


@pytest.fixture
def ec_model() -> DenseModel:
    instance = parse_ec_clauses(EC_CLAUSES, n_qubits=6)
    spec = ModelSpec(
        kind=ModelKind.EC, b_x=0.5, j0=0.25, n_qubits=6, clauses=instance.clauses
    )
    return build_ec(instance, spec)


@pytest.fixture
def ec_cavity() -> CavityParams:
    return CavityParams(delta_c=-0.1, kappa=0.25, g=0.06)


@pytest.fixture
def tfim_model() -> BdGModel:
    return BdGModel(ModelSpec(kind=ModelKind.TFIM, b_x=1.95, j0=1.0, n_qubits=120))


@pytest.fixture
def tfim_cavity() -> CavityParams:
    return CavityParams(delta_c=-0.14, kappa=0.12, g=0.03)
