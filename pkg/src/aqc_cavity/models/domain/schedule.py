"""Drive schedules for the switching protocol."""

from dataclasses import dataclass
from enum import Enum

from ...exceptions import InvalidSpecError


class ControlKind(str, Enum):
    """Which cavity parameter the protocol (or a sweep) varies."""

    EPSILON = "epsilon"
    DELTA_C = "delta_c"


def _check_integration(
    t_max: float | None, dt: float | None, settle_tol: float | None, stride: int | None
) -> None:
    if dt is not None and not dt > 0:
        raise InvalidSpecError(f"dt must be positive, got {dt}")
    if t_max is not None and dt is not None and not t_max > dt:
        raise InvalidSpecError(f"t_max ({t_max}) must exceed dt ({dt})")
    if settle_tol is not None and not settle_tol > 0:
        raise InvalidSpecError(f"settle_tol must be positive, got {settle_tol}")
    if stride is not None and stride < 1:
        raise InvalidSpecError(f"stride must be >= 1, got {stride}")


@dataclass(frozen=True)
class Schedule:
    """Two-switch drive schedule on epsilon.

    The drive starts from the stationary state at ``eps0``, is set to
    ``eps_mid`` at t = 0 and to ``eps_f`` at the first step where the
    effective field falls below ``switch_threshold`` (rises above it when
    the schedule runs in reverse). Values left as None are resolved by the
    protocol runner: ``eps0``/``eps_f`` from the feasibility endpoints,
    ``dt``, ``t_max``, ``settle_tol`` and ``stride`` from the solver
    settings.

    Attributes:
        eps_mid: Intermediate drive, the protocol's control value
        switch_threshold: Effective field triggering the eps_mid -> eps_f switch
        eps0: Initial drive (stationary state with x_ss = 0 by default)
        eps_f: Final drive (stationary state with B_eff = 0 by default)
        t_max: Integration horizon
        dt: Fixed integration step
        settle_tol: Settling tolerance
        stride: Integration steps per stored sample
    """

    eps_mid: float
    switch_threshold: float
    eps0: float | None = None
    eps_f: float | None = None
    t_max: float | None = None
    dt: float | None = None
    settle_tol: float | None = None
    stride: int | None = None

    def __post_init__(self) -> None:
        _check_integration(self.t_max, self.dt, self.settle_tol, self.stride)

    @property
    def reverse(self) -> bool:
        """True when the schedule drives the field upward (eps_mid below eps0)."""
        return self.eps0 is not None and self.eps_mid < self.eps0


@dataclass(frozen=True)
class DetuningSchedule:
    """Two-switch schedule with the detuning as control at fixed drive.

    Integration values left as None come from the solver settings.

    Attributes:
        epsilon: Fixed drive amplitude
        delta_mid: Intermediate detuning, the protocol's control value
        switch_threshold: Effective field triggering the delta_mid -> delta_f switch
        delta0: Initial detuning (stationary state near B_eff = B_x)
        delta_f: Final detuning (stationary state with B_eff = 0); resolved when None
        t_max: Integration horizon
        dt: Fixed integration step
        settle_tol: Settling tolerance
        stride: Integration steps per stored sample
    """

    epsilon: float
    delta_mid: float
    switch_threshold: float
    delta0: float = -1.0
    delta_f: float | None = None
    t_max: float | None = None
    dt: float | None = None
    settle_tol: float | None = None
    stride: int | None = None

    def __post_init__(self) -> None:
        if self.delta_mid >= 0 or self.delta0 >= 0:
            raise InvalidSpecError("Detuning schedules require negative detunings")
        _check_integration(self.t_max, self.dt, self.settle_tol, self.stride)

    @property
    def reverse(self) -> bool:
        """True when delta_mid is more negative than delta0, which raises the field."""
        return self.delta_mid < self.delta0


__all__ = ["ControlKind", "Schedule", "DetuningSchedule"]
