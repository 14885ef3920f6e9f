"""Coupled qubit-cavity time evolution and the switching protocol."""

from .coupled import DriveProgram, cavity_rhs, drive_program, evolve_schrodinger, integrate_coupled
from .integrator import default_time_step, rk4_step
from .protocol import (
    any_excitation_probability,
    excitation_probability,
    extract_ramp_rate,
    final_detuning,
    lz_probability,
    resolve_schedule,
    run_linear_baseline,
    run_protocol,
    run_protocol_detuning,
    settle_time,
)

__all__ = [
    "rk4_step",
    "default_time_step",
    "cavity_rhs",
    "DriveProgram",
    "drive_program",
    "integrate_coupled",
    "evolve_schrodinger",
    "lz_probability",
    "excitation_probability",
    "any_excitation_probability",
    "extract_ramp_rate",
    "settle_time",
    "run_linear_baseline",
    "resolve_schedule",
    "run_protocol",
    "final_detuning",
    "run_protocol_detuning",
]
