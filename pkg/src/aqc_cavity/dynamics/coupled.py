"""Self-consistent time evolution of the qubit state and the mean cavity field.

The joint state vector is [psi..., <a>]: the qubit amplitudes (dense or BdG
pairs) followed by the complex cavity amplitude. At every RK4 stage the
effective field B_eff = B_x - g x_a and the operator average X = <H_0>
couple the two parts.
"""

import logging
import math
from bisect import bisect_left
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ..exceptions import (
    DegenerateGroundError,
    EmptyResultError,
    IntegrationError,
    InvalidInputError,
    InvalidSpecError,
)
from ..hamiltonians.base import AdiabaticModel
from ..meanfield import stationary_points
from ..models.domain.cavity import CavityParams
from ..models.domain.schedule import DetuningSchedule, Schedule
from ..models.domain.trajectory import (
    CavityAmplitude,
    ComplexArray,
    QuantumState,
    Termination,
    Trajectory,
)
from ..settings import SolverSettings
from .integrator import default_time_step, rk4_step

logger = logging.getLogger(__name__)

_PROGRESS_EVERY = 100_000


def cavity_rhs(a: CavityAmplitude | complex, x_op: float, cavity: CavityParams) -> complex:
    """d<a>/dt = i Delta_c <a> - (kappa/2) <a> + i (eps - g X)."""
    value = a.value if isinstance(a, CavityAmplitude) else complex(a)
    return (
        1j * cavity.delta_c * value
        - 0.5 * cavity.kappa * value
        + 1j * (cavity.epsilon - cavity.g * x_op)
    )


@dataclass(frozen=True)
class DriveProgram:
    """Cavity parameters before and after the threshold switch.

    Attributes:
        before: Parameters from t = 0 until the switch
        after: Parameters after the switch
        threshold: Effective field that triggers the switch
        upward: Switch when B_eff rises above the threshold instead of falling below
        dt: Integration step
        t_max: Integration horizon
        settle_tol: Settling tolerance
        stride: Steps per stored sample
    """

    before: CavityParams
    after: CavityParams
    threshold: float
    upward: bool
    dt: float
    t_max: float
    settle_tol: float
    stride: int

    def triggers(self, b_eff: float) -> bool:
        return b_eff > self.threshold if self.upward else b_eff < self.threshold


def drive_program(
    model: AdiabaticModel,
    schedule: Schedule | DetuningSchedule,
    cavity: CavityParams,
    settings: SolverSettings | None = None,
) -> DriveProgram:
    """Resolve a schedule against the base cavity parameters.

    Raises:
        InvalidSpecError: If the final control value is still unresolved
    """
    settings = settings or model.settings
    if isinstance(schedule, Schedule):
        if schedule.eps_f is None:
            raise InvalidSpecError("Schedule.eps_f must be resolved before integration")
        before = cavity.with_epsilon(schedule.eps_mid)
        after = cavity.with_epsilon(schedule.eps_f)
    else:
        if schedule.delta_f is None:
            raise InvalidSpecError("DetuningSchedule.delta_f must be resolved before integration")
        fixed = cavity.with_epsilon(schedule.epsilon)
        before = fixed.with_detuning(schedule.delta_mid)
        after = fixed.with_detuning(schedule.delta_f)

    fastest_detuning = max(abs(before.delta_c), abs(after.delta_c))
    dt = schedule.dt or default_time_step(
        model.b_x, model.j0, cavity.kappa, fastest_detuning, settings.dt_scale
    )
    t_max = schedule.t_max or settings.t_max
    if not t_max > dt:
        raise InvalidSpecError(f"t_max ({t_max}) must exceed dt ({dt})")
    return DriveProgram(
        before=before,
        after=after,
        threshold=schedule.switch_threshold,
        upward=schedule.reverse,
        dt=dt,
        t_max=t_max,
        settle_tol=schedule.settle_tol or settings.settle_tol,
        stride=schedule.stride or settings.sampling_stride,
    )


class _SettleMonitor:
    """Detects settling over a trailing window of 2/kappa time units.

    Settled means |dx_a/dt| <= tol at every sample in the window, window
    means of X drifting by at most tol per unit time, and, before the
    switch, B_eff within tol B_x of a stable stationary point.
    """

    def __init__(
        self, model: AdiabaticModel, program: DriveProgram, enabled: bool = True
    ) -> None:
        self.model = model
        self.program = program
        self.enabled = enabled
        self.window = 2.0 / program.before.kappa
        self.tol = program.settle_tol
        self._t: list[float] = []
        self._rate: list[float] = []
        self._x: list[float] = []
        self._stable_fields: list[float] | None = None

    def _fields_before_switch(self) -> list[float]:
        if self._stable_fields is None:
            try:
                points = stationary_points(self.model, self.program.before)
                self._stable_fields = [p.b_eff for p in points if p.is_stable]
            except (EmptyResultError, InvalidInputError):
                self._stable_fields = []
        return self._stable_fields

    def update(self, t: float, dxa_dt: float, x_op: float, b_eff: float, switched: bool) -> bool:
        self._t.append(t)
        self._rate.append(abs(dxa_dt))
        self._x.append(x_op)
        if not self.enabled or t < 2.0 * self.window:
            return False

        current = bisect_left(self._t, t - self.window)
        previous = bisect_left(self._t, t - 2.0 * self.window)
        if current <= previous or max(self._rate[current:]) > self.tol:
            return False
        drift = abs(np.mean(self._x[current:]) - np.mean(self._x[previous:current])) / self.window
        if drift > self.tol:
            return False
        if switched:
            return True
        margin = self.tol * self.model.b_x
        return any(abs(b_eff - field) <= margin for field in self._fields_before_switch())


def _excitation_or_nan(model: AdiabaticModel, state: QuantumState, b_eff: float) -> float:
    try:
        return model.excitation_probability(state, b_eff)
    except DegenerateGroundError:
        return float("nan")


def integrate_coupled(
    model: AdiabaticModel,
    state0: QuantumState,
    a0: CavityAmplitude,
    schedule: Schedule | DetuningSchedule,
    cavity: CavityParams,
    settings: SolverSettings | None = None,
    settle: bool = True,
    on_progress: Callable[[str], None] | None = None,
) -> Trajectory:
    """Integrate the coupled qubit-cavity equations under a two-switch schedule.

    The control takes its intermediate value from t = 0 and its final value
    from the first step at which B_eff crosses the switch threshold. After
    each step the qubit state is projected back to unit norm; the largest
    defect removed is reported on the trajectory.

    Args:
        model: Adiabatic model
        state0: Normalized initial qubit state
        a0: Initial cavity amplitude
        schedule: Drive or detuning schedule with resolved final value
        cavity: Base cavity parameters
        settings: Numerical settings (default: the model's)
        settle: Stop when the run has settled; False always runs to t_max
        on_progress: Optional callback for progress updates

    Returns:
        Trajectory sampled every ``stride`` steps plus the last step

    Raises:
        InvalidInputError: If state0 is not normalized or a0 is not finite
        IntegrationError: If the state becomes non-finite
    """
    settings = settings or model.settings
    program = drive_program(model, schedule, cavity, settings)
    initial_defect = state0.norm_defect()
    if initial_defect > 1e-8:
        raise InvalidInputError(f"Initial state is not normalized (defect {initial_defect:.3e})")
    if not (math.isfinite(a0.a_re) and math.isfinite(a0.a_im)):
        raise InvalidInputError("Initial cavity amplitude must be finite")

    g, b_x = cavity.g, model.b_x
    current = program.before

    def rhs(_t: float, y: ComplexArray) -> ComplexArray:
        psi, a = y[:-1], y[-1]
        b_eff = b_x - 2.0 * g * a.real
        out = np.empty_like(y)
        out[:-1] = model.schrodinger_rhs(psi, b_eff)
        out[-1] = cavity_rhs(a, model.expectation_h0(model.wrap_state(psi)), current)
        return out

    y = np.concatenate([state0.flat(), [a0.value]]).astype(np.complex128)
    columns: dict[str, list[float]] = {
        key: [] for key in ("t", "a_re", "a_im", "x_a", "X", "b_eff", "p_exc")
    }
    monitor = _SettleMonitor(model, program, enabled=settle)
    switched = False
    switch_time: float | None = None
    max_defect = initial_defect

    def record(t: float) -> bool:
        a = complex(y[-1])
        state = model.wrap_state(y[:-1])
        x_op = model.expectation_h0(state)
        b_eff = b_x - 2.0 * g * a.real
        for key, value in (
            ("t", t),
            ("a_re", a.real),
            ("a_im", a.imag),
            ("x_a", 2.0 * a.real),
            ("X", x_op),
            ("b_eff", b_eff),
            ("p_exc", _excitation_or_nan(model, state, b_eff)),
        ):
            columns[key].append(value)
        dxa_dt = 2.0 * cavity_rhs(a, x_op, current).real
        return monitor.update(t, dxa_dt, x_op, b_eff, switched)

    if program.triggers(b_x - 2.0 * g * y[-1].real):
        current, switched, switch_time = program.after, True, 0.0
    record(0.0)

    dt = program.dt
    n_steps = int(math.ceil(program.t_max / dt - 1e-9))
    terminated = Termination.TIMEOUT
    t = 0.0
    for step in range(1, n_steps + 1):
        y = rk4_step(rhs, t, y, dt)
        if not np.all(np.isfinite(y)):
            raise IntegrationError("Integration produced non-finite values", last_time=t)
        t = step * dt

        psi, defect = model.normalize(y[:-1])
        y[:-1] = psi
        max_defect = max(max_defect, defect)

        if not switched and program.triggers(b_x - 2.0 * g * y[-1].real):
            current, switched, switch_time = program.after, True, t
            logger.debug("Switched control at t=%.6g", t)

        if step % program.stride == 0 or step == n_steps:
            if record(t):
                terminated = Termination.SETTLED
                break
        if on_progress and step % _PROGRESS_EVERY == 0:
            on_progress(f"t={t:.6g} of {program.t_max:.6g}, B_eff={columns['b_eff'][-1]:.6g}")

    if on_progress:
        on_progress(f"Integration {terminated.value} at t={t:.6g}")

    final_a = complex(y[-1])
    return Trajectory(
        t=np.asarray(columns["t"]),
        a_re=np.asarray(columns["a_re"]),
        a_im=np.asarray(columns["a_im"]),
        x_a=np.asarray(columns["x_a"]),
        x_op=np.asarray(columns["X"]),
        b_eff=np.asarray(columns["b_eff"]),
        p_exc=np.asarray(columns["p_exc"]),
        switch_time=switch_time,
        terminated=terminated,
        max_norm_defect=max_defect,
        final_state=model.wrap_state(y[:-1].copy()),
        final_amplitude=CavityAmplitude.from_complex(final_a),
    )


def evolve_schrodinger(
    model: AdiabaticModel,
    state0: QuantumState,
    field: Callable[[float], float],
    t_end: float,
    dt: float,
) -> tuple[QuantumState, float]:
    """Evolve the qubit state alone under a prescribed field B(t).

    The step is shrunk so an integer number of steps ends exactly at t_end.

    Returns:
        Final state and the largest norm defect removed by projection

    Raises:
        InvalidInputError: If t_end or dt is not positive
        IntegrationError: If the state becomes non-finite
    """
    if not t_end > 0 or not dt > 0:
        raise InvalidInputError(f"t_end and dt must be positive, got {t_end}, {dt}")
    n_steps = max(1, int(math.ceil(t_end / dt - 1e-9)))
    h = t_end / n_steps

    def rhs(t: float, psi: ComplexArray) -> ComplexArray:
        return model.schrodinger_rhs(psi, field(t))

    psi = state0.flat().astype(np.complex128)
    max_defect = 0.0
    for step in range(n_steps):
        psi = rk4_step(rhs, step * h, psi, h)
        if not np.all(np.isfinite(psi)):
            raise IntegrationError("Schrodinger evolution produced non-finite values", step * h)
        psi, defect = model.normalize(psi)
        max_defect = max(max_defect, defect)
    return model.wrap_state(psi), max_defect


__all__ = [
    "cavity_rhs",
    "DriveProgram",
    "drive_program",
    "integrate_coupled",
    "evolve_schrodinger",
]
