"""Numerical settings shared by the solvers."""

from dataclasses import dataclass, replace
from typing import Any

from .exceptions import InvalidInputError


@dataclass(frozen=True)
class SolverSettings:
    """Tolerances, grid sizes and integration defaults.

    Every public numerical operation takes an optional ``settings`` argument;
    ``DEFAULT_SETTINGS`` is used when it is omitted.

    Attributes:
        max_dim: Largest dense Hilbert-space dimension accepted
        symmetry_tol: Relative asymmetry tolerated by ``eigh``
        degeneracy_tol: Ground-state degeneracy threshold, relative to ||H||
        root_grid: Uniform grid points for the stationary-root scan
        bifurcation_grid: Grid points for the X'_ss = alpha/g^2 scan on [0, B_x]
        feasibility_grid: Grid points used for max X'_ss
        root_tol: Residual target for stationary roots, scaled by max(eps, 1)
        max_grid_doublings: How often the root grid may be refined
        ec_attempts: Rejection budget for unique-solution EC generation
        fd_step_scale: Finite-difference step in units of J_0
        fd_drift_tol: Allowed relative change of X' when halving the step
        sampling_stride: Integration steps between stored trajectory samples
        settle_tol: Settling tolerance (per unit time, and in B_x units)
        t_max: Default integration horizon
        dt_scale: Default dt is dt_scale / max(B_x, J_0, kappa, |Delta_c|)
    """

    max_dim: int = 1024
    symmetry_tol: float = 1e-12
    degeneracy_tol: float = 1e-9
    root_grid: int = 2000
    bifurcation_grid: int = 800
    feasibility_grid: int = 400
    root_tol: float = 1e-10
    max_grid_doublings: int = 3
    ec_attempts: int = 100_000
    fd_step_scale: float = 1e-4
    fd_drift_tol: float = 1e-6
    sampling_stride: int = 10
    settle_tol: float = 0.01
    t_max: float = 1e5
    dt_scale: float = 0.01

    def __post_init__(self) -> None:
        if self.sampling_stride < 1:
            raise InvalidInputError(f"sampling_stride must be >= 1, got {self.sampling_stride}")
        if not self.settle_tol > 0:
            raise InvalidInputError(f"settle_tol must be positive, got {self.settle_tol}")

    def replace(self, **overrides: Any) -> "SolverSettings":
        """Return a copy with the given fields replaced."""
        return replace(self, **overrides)


DEFAULT_SETTINGS = SolverSettings()

__all__ = ["SolverSettings", "DEFAULT_SETTINGS"]
