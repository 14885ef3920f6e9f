"""Cavity-assisted adiabatic quantum evolution.

A driven, damped ancilla cavity couples to a qubit register through the
transverse-field term and slows the effective field down near the minimum
gap. The package provides:
- Model Hamiltonians: two-level system, Exact Cover, transverse-field Ising chain
- Spectral analysis: ground-state averages, their field derivative, gap location
- Mean-field stationary analysis: stationary points, bifurcations, sweeps
- Coupled dynamics: the switching protocol with its Landau-Zener and linear-ramp baselines
"""

from .dynamics import (
    extract_ramp_rate,
    integrate_coupled,
    lz_probability,
    run_linear_baseline,
    run_protocol,
    run_protocol_detuning,
)
from .exceptions import (
    AqcCavityError,
    ConfigError,
    DegenerateGroundError,
    EmptyResultError,
    GenerationFailedError,
    IntegrationError,
    InvalidInputError,
    InvalidSpecError,
    OutputPathError,
    ParseError,
    ZeroDetuningError,
)
from .hamiltonians import (
    AdiabaticModel,
    BdGModel,
    DenseModel,
    build_ec,
    build_model,
    build_tfim_dense,
    build_tls,
    count_violations,
    generate_ec_instance,
    parse_ec_clauses,
    solutions,
)
from .meanfield import (
    alpha,
    bifurcation_points,
    feasibility_check,
    secular_frequencies,
    stationary_points,
    sweep_control,
)
from .models import (
    CavityParams,
    Clause,
    ECInstance,
    ModelKind,
    ModelSpec,
    QuantumState,
    RunConfig,
    Schedule,
)
from .models.domain import DetuningSchedule, ProtocolResult, Trajectory
from .settings import DEFAULT_SETTINGS, SolverSettings
from .spectral import eigh, gap_location, ground_observables, xss_prime_perturbative

__version__ = "0.1.0"

__all__ = [
    # Models
    "ModelKind",
    "ModelSpec",
    "Clause",
    "ECInstance",
    "CavityParams",
    "Schedule",
    "DetuningSchedule",
    "QuantumState",
    "Trajectory",
    "ProtocolResult",
    "RunConfig",
    "SolverSettings",
    "DEFAULT_SETTINGS",
    # Hamiltonians
    "AdiabaticModel",
    "DenseModel",
    "BdGModel",
    "build_tls",
    "build_ec",
    "build_tfim_dense",
    "build_model",
    "parse_ec_clauses",
    "generate_ec_instance",
    "count_violations",
    "solutions",
    # Spectral analysis
    "eigh",
    "ground_observables",
    "xss_prime_perturbative",
    "gap_location",
    # Stationary analysis
    "alpha",
    "stationary_points",
    "bifurcation_points",
    "secular_frequencies",
    "sweep_control",
    "feasibility_check",
    # Dynamics
    "integrate_coupled",
    "run_protocol",
    "run_protocol_detuning",
    "run_linear_baseline",
    "extract_ramp_rate",
    "lz_probability",
    # Exceptions
    "AqcCavityError",
    "InvalidSpecError",
    "ParseError",
    "GenerationFailedError",
    "InvalidInputError",
    "DegenerateGroundError",
    "EmptyResultError",
    "ZeroDetuningError",
    "IntegrationError",
    "ConfigError",
    "OutputPathError",
]
