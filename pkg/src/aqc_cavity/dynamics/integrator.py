"""Fixed-step classical fourth-order Runge-Kutta stepper for complex state vectors."""

from collections.abc import Callable

import numpy as np
import numpy.typing as npt

ComplexArray = npt.NDArray[np.complex128]
RightHandSide = Callable[[float, ComplexArray], ComplexArray]


def rk4_step(rhs: RightHandSide, t: float, y: ComplexArray, dt: float) -> ComplexArray:
    """Advance y' = rhs(t, y) by one step of size dt."""
    k1 = rhs(t, y)
    k2 = rhs(t + dt / 2.0, y + (dt / 2.0) * k1)
    k3 = rhs(t + dt / 2.0, y + (dt / 2.0) * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def default_time_step(
    b_x: float, j0: float, kappa: float, delta_c: float, dt_scale: float = 0.01
) -> float:
    """dt = dt_scale / max(B_x, J_0, kappa, |Delta_c|)."""
    return dt_scale / max(b_x, j0, kappa, abs(delta_c))


__all__ = ["rk4_step", "default_time_step", "RightHandSide"]
