"""Domain models for cavity-assisted adiabatic evolution."""

from .cavity import CavityParams, alpha
from .instance import ECInstance
from .observables import GapLocation, GroundObservables, Spectrum
from .results import BifurcationPoint, FeasibilityReport, Stability, StationaryPoint, SweepRow
from .schedule import ControlKind, DetuningSchedule, Schedule
from .spec import Clause, ModelKind, ModelSpec
from .trajectory import CavityAmplitude, ProtocolResult, QuantumState, Termination, Trajectory

__all__ = [
    "ModelKind",
    "ModelSpec",
    "Clause",
    "ECInstance",
    "CavityParams",
    "alpha",
    "ControlKind",
    "Schedule",
    "DetuningSchedule",
    "Stability",
    "StationaryPoint",
    "BifurcationPoint",
    "FeasibilityReport",
    "SweepRow",
    "Spectrum",
    "GroundObservables",
    "GapLocation",
    "QuantumState",
    "CavityAmplitude",
    "Termination",
    "Trajectory",
    "ProtocolResult",
]
