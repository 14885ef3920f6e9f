"""The switching protocol and the metrics that judge its adiabaticity.

A run starts in the stationary state of the initial control value, moves
the control to an intermediate value and, once the effective field passes
the switch threshold, to the final value. Its ramp rate at the gap and its
final excitation are compared with the Landau-Zener estimate and with a
linear ramp covering the same field change in the same time.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import replace

import numpy as np

from ..exceptions import EmptyResultError, InvalidInputError
from ..hamiltonians.base import AdiabaticModel
from ..hamiltonians.bdg import BdGModel
from ..meanfield import feasibility_check, lower_branch, stationary_points, upper_branch
from ..models.domain.cavity import CavityParams
from ..models.domain.observables import GapLocation
from ..models.domain.results import FeasibilityReport
from ..models.domain.schedule import ControlKind, DetuningSchedule, Schedule
from ..models.domain.trajectory import CavityAmplitude, ProtocolResult, QuantumState, Trajectory
from ..settings import SolverSettings
from ..spectral import gap_location
from .coupled import drive_program, evolve_schrodinger, integrate_coupled

logger = logging.getLogger(__name__)


def lz_probability(gap: float, rate: float) -> float:
    """Landau-Zener excitation exp(-pi gap^2 / (2 rate)); 0 for a zero rate.

    Raises:
        InvalidInputError: If rate is negative
    """
    if rate < 0:
        raise InvalidInputError(f"rate must be non-negative, got {rate}")
    if rate == 0.0:
        return 0.0
    return math.exp(-math.pi * gap**2 / (2.0 * rate))


def excitation_probability(model: AdiabaticModel, state: QuantumState, b_eff: float) -> float:
    """Weight outside the instantaneous ground state (dense: 1 - fidelity; BdG: sum |beta_k|^2).

    The BdG value counts excited pair modes and ranges over [0, N/2].
    """
    return model.excitation_probability(state, b_eff)


def any_excitation_probability(model: AdiabaticModel, state: QuantumState, b_eff: float) -> float:
    """Probability of any excitation, 1 - ground-state fidelity, in [0, 1] for every backend.

    BdG: 1 - prod_k (1 - |beta_k|^2).
    """
    return min(max(1.0 - model.ground_fidelity(state, b_eff), 0.0), 1.0)


def extract_ramp_rate(trajectory: Trajectory, b_gap: float, direction: str = "down") -> float:
    """|dB_eff/dt| at the first crossing of b_gap, 0 if B_eff never crosses.

    Uses a centered five-point difference at the first sample past the
    crossing when the neighbouring samples are evenly spaced, and
    ``np.gradient`` otherwise.

    Args:
        trajectory: Sampled trajectory
        b_gap: Gap position
        direction: "down" for a falling field, "up" for a rising one

    Raises:
        InvalidInputError: On an empty trajectory or unknown direction
    """
    if len(trajectory) == 0:
        raise InvalidInputError("Cannot extract a ramp rate from an empty trajectory")
    if direction not in ("down", "up"):
        raise InvalidInputError(f"direction must be 'down' or 'up', got {direction!r}")

    b, t = trajectory.b_eff, trajectory.t
    if direction == "down":
        hits = np.flatnonzero((b[:-1] > b_gap) & (b[1:] <= b_gap))
    else:
        hits = np.flatnonzero((b[:-1] < b_gap) & (b[1:] >= b_gap))
    if hits.size == 0:
        return 0.0

    j = int(hits[0]) + 1
    if 2 <= j <= b.size - 3:
        spacing = np.diff(t[j - 2 : j + 3])
        if np.allclose(spacing, spacing[0], rtol=1e-9, atol=0.0):
            h = spacing[0]
            slope = (-b[j + 2] + 8.0 * b[j + 1] - 8.0 * b[j - 1] + b[j - 2]) / (12.0 * h)
            return float(abs(slope))
    if b.size < 2:
        return 0.0
    return float(abs(np.gradient(b, t)[j]))


def settle_time(trajectory: Trajectory, b_final: float, tolerance: float) -> float:
    """First sample time with |B_eff - b_final| <= tolerance."""
    close = np.flatnonzero(np.abs(trajectory.b_eff - b_final) <= tolerance)
    return float(trajectory.t[close[0]]) if close.size else float(trajectory.t[-1])


def run_linear_baseline(
    model: AdiabaticModel, b_start: float, b_end: float, t_s: float, dt: float
) -> tuple[float, float]:
    """Schrodinger-only linear ramp from b_start to b_end over t_s.

    Starts in the ground state at b_start.

    Returns:
        (lambda_l, n_l): ramp rate and final excitation probability

    Raises:
        InvalidInputError: If t_s <= 0
        IntegrationError: If the evolution diverges
    """
    rate, state = _linear_ramp(model, b_start, b_end, t_s, dt)
    return rate, model.excitation_probability(state, b_end)


def _linear_ramp(
    model: AdiabaticModel, b_start: float, b_end: float, t_s: float, dt: float
) -> tuple[float, QuantumState]:
    if not t_s > 0:
        raise InvalidInputError(f"t_s must be positive, got {t_s}")
    rate = (b_end - b_start) / t_s
    state, _ = evolve_schrodinger(
        model, model.ground_state(b_start), lambda t: b_start + rate * t, t_s, dt
    )
    return abs(rate), state


def _initial_condition(
    model: AdiabaticModel, cavity: CavityParams, upper: bool
) -> tuple[QuantumState, CavityAmplitude]:
    points = stationary_points(model, cavity)
    point = upper_branch(points) if upper else lower_branch(points)
    x_op = model.x_ss(point.b_eff)
    return model.ground_state(point.b_eff), CavityAmplitude.from_complex(
        cavity.stationary_amplitude(x_op)
    )


def _assemble(
    model: AdiabaticModel,
    trajectory: Trajectory,
    control_value: float,
    control_kind: ControlKind,
    gap: GapLocation,
    settle_tol: float,
    dt: float,
    direction: str,
) -> ProtocolResult:
    b_final = float(trajectory.b_eff[-1])
    lambda_c = extract_ramp_rate(trajectory, gap.b_gap, direction=direction)
    n_c = model.excitation_probability(trajectory.final_state, b_final)
    t_s = settle_time(trajectory, b_final, settle_tol * model.b_x)

    p_any_c = any_excitation_probability(model, trajectory.final_state, b_final)

    if t_s > 0:
        lambda_l, linear_state = _linear_ramp(model, float(trajectory.b_eff[0]), b_final, t_s, dt)
        n_l = model.excitation_probability(linear_state, b_final)
        p_any_l = any_excitation_probability(model, linear_state, b_final)
    else:
        lambda_l, n_l, p_any_l = 0.0, 0.0, 0.0

    mode_product = None
    if isinstance(model, BdGModel):
        mode_probabilities = model.mode_lz_probabilities(lambda_c)
        mode_product = float(1.0 - np.prod(1.0 - mode_probabilities))

    return ProtocolResult(
        control_value=control_value,
        trajectory=trajectory,
        lambda_c=lambda_c,
        n_c=n_c,
        lz_prediction=lz_probability(gap.gap_min, model.lz_rate_factor * lambda_c),
        lambda_l=lambda_l,
        n_l=n_l,
        b_final=b_final,
        t_s=t_s,
        lz_mode_product=mode_product,
        control_kind=control_kind,
        extras={
            "ground_fidelity": 1.0 - p_any_c,
            "p_any_c": p_any_c,
            "p_any_l": p_any_l,
            "b_gap": gap.b_gap,
            "gap_min": gap.gap_min,
        },
    )


def resolve_schedule(schedule: Schedule, report: FeasibilityReport) -> Schedule:
    """Fill eps0/eps_f from the feasibility endpoints.

    Reverse schedules (explicit eps0 above eps_mid) default eps_f to the
    drive whose stationary field is B_x.
    """
    eps0 = schedule.eps0 if schedule.eps0 is not None else report.eps0
    if schedule.eps_f is not None:
        eps_f = schedule.eps_f
    else:
        eps_f = report.eps0 if schedule.eps_mid < eps0 else report.eps_f
    return replace(schedule, eps0=eps0, eps_f=eps_f)


def run_protocol(
    model: AdiabaticModel,
    cavity: CavityParams,
    schedule: Schedule,
    settings: SolverSettings | None = None,
    report: FeasibilityReport | None = None,
    gap: GapLocation | None = None,
    on_progress: Callable[[str], None] | None = None,
) -> ProtocolResult:
    """Run the drive-switching protocol and its linear-ramp baseline.

    The system starts at the stable stationary state for eps0 (upper branch,
    or lower branch for a reverse schedule) with the qubits in the ground
    state of the corresponding effective field.

    Args:
        model: Adiabatic model
        cavity: Cavity parameters; its epsilon is ignored
        schedule: Drive schedule; unresolved values are filled in
        settings: Numerical settings (default: the model's)
        report: Precomputed feasibility report for these parameters
        gap: Precomputed gap location
        on_progress: Optional callback for progress updates

    Returns:
        ProtocolResult

    Raises:
        InvalidInputError: If the parameters fail the feasibility check
        IntegrationError: If the integration diverges
    """
    settings = settings or model.settings
    report = report or feasibility_check(model, cavity, settings)
    if not report.feasible:
        raise InvalidInputError(
            "Cavity parameters fail the protocol feasibility conditions: "
            f"{report.to_dict()['conditions']}"
        )
    gap = gap or gap_location(model)
    schedule = resolve_schedule(schedule, report)
    eps0 = schedule.eps0 if schedule.eps0 is not None else report.eps0

    if on_progress:
        on_progress(f"Protocol eps_mid={schedule.eps_mid:.6g} (eps_f={schedule.eps_f:.6g})")
    state0, a0 = _initial_condition(model, cavity.with_epsilon(eps0), upper=not schedule.reverse)
    trajectory = integrate_coupled(
        model, state0, a0, schedule, cavity, settings=settings, on_progress=on_progress
    )
    program = drive_program(model, schedule, cavity, settings)
    return _assemble(
        model,
        trajectory,
        schedule.eps_mid,
        ControlKind.EPSILON,
        gap,
        program.settle_tol,
        program.dt,
        "up" if schedule.reverse else "down",
    )


def final_detuning(model: AdiabaticModel, cavity: CavityParams, epsilon: float) -> float:
    """Detuning whose stationary state at drive ``epsilon`` has B_eff = 0.

    Solves alpha(Delta) = (eps - g X_ss(0)) g / B_x on the branch |Delta| >= kappa/2.

    Raises:
        EmptyResultError: If that alpha lies below kappa/2
    """
    if cavity.g == 0.0:
        raise EmptyResultError("B_eff = 0 is unreachable without coupling")
    required = (epsilon - cavity.g * model.x_ss(0.0)) * cavity.g / model.b_x
    half_kappa = cavity.kappa / 2.0
    if required < half_kappa:
        raise EmptyResultError(
            f"No detuning reaches B_eff = 0 at eps={epsilon:.6g} (alpha={required:.6g} < kappa/2)"
        )
    return -required - math.sqrt(required**2 - half_kappa**2)


def run_protocol_detuning(
    model: AdiabaticModel,
    cavity: CavityParams,
    schedule: DetuningSchedule,
    settings: SolverSettings | None = None,
    gap: GapLocation | None = None,
    on_progress: Callable[[str], None] | None = None,
) -> ProtocolResult:
    """Run the protocol with the detuning as the switched control at fixed drive.

    Args:
        model: Adiabatic model
        cavity: Cavity parameters; epsilon and delta_c are taken from the schedule
        schedule: Detuning schedule; delta_f defaults to the B_eff = 0 detuning
        settings: Numerical settings (default: the model's)
        gap: Precomputed gap location
        on_progress: Optional callback for progress updates

    Raises:
        EmptyResultError: If no detuning drives the field to zero
        IntegrationError: If the integration diverges
    """
    settings = settings or model.settings
    gap = gap or gap_location(model)
    fixed = cavity.with_epsilon(schedule.epsilon)
    if schedule.delta_f is None:
        if schedule.reverse:
            schedule = replace(schedule, delta_f=schedule.delta0)
        else:
            schedule = replace(schedule, delta_f=final_detuning(model, fixed, schedule.epsilon))

    if on_progress:
        on_progress(f"Detuning protocol delta_mid={schedule.delta_mid:.6g}")
    state0, a0 = _initial_condition(
        model, fixed.with_detuning(schedule.delta0), upper=not schedule.reverse
    )
    trajectory = integrate_coupled(
        model, state0, a0, schedule, cavity, settings=settings, on_progress=on_progress
    )
    program = drive_program(model, schedule, cavity, settings)
    return _assemble(
        model,
        trajectory,
        schedule.delta_mid,
        ControlKind.DELTA_C,
        gap,
        program.settle_tol,
        program.dt,
        "up" if schedule.reverse else "down",
    )


__all__ = [
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
