"""Models for the ancilla-cavity toolkit."""

from .config import RunConfig, SweepSpec
from .domain import (
    CavityParams,
    Clause,
    ECInstance,
    ModelKind,
    ModelSpec,
    QuantumState,
    Schedule,
)

__all__ = [
    "ModelKind",
    "ModelSpec",
    "Clause",
    "ECInstance",
    "CavityParams",
    "Schedule",
    "QuantumState",
    "RunConfig",
    "SweepSpec",
]
