"""Stationary mean-field layer: self-consistent cavity displacement and its branches.

The stationary displacement solves f(x) = alpha x - eps + g X_ss(B_x - g x) = 0.
A root is stable when alpha - g^2 X'_ss > 0; the stationary curve folds where
X'_ss(B) = alpha / g^2.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from .exceptions import EmptyResultError, InvalidInputError, ZeroDetuningError
from .hamiltonians.base import AdiabaticModel
from .models.domain.cavity import CavityParams, alpha
from .models.domain.results import (
    BifurcationPoint,
    FeasibilityReport,
    Stability,
    StationaryPoint,
    SweepRow,
)
from .models.domain.schedule import ControlKind
from .settings import SolverSettings
from .spectral import gap_location, x_ss_prime

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class StationaryGrid:
    """X_ss sampled on a uniform displacement grid for one (model, g) pair.

    The root function only depends on alpha and eps through a linear term,
    so sweeps reuse one grid across control values.
    """

    x: FloatArray
    x_op: FloatArray
    g: float
    b_x: float

    @classmethod
    def build(
        cls, model: AdiabaticModel, g: float, x_range: tuple[float, float], n: int
    ) -> "StationaryGrid":
        x = np.linspace(x_range[0], x_range[1], n)
        return cls(x=x, x_op=model.x_ss_grid(model.b_x - g * x), g=g, b_x=model.b_x)

    def residuals(self, alpha_value: float, epsilon: float) -> FloatArray:
        return np.asarray(alpha_value * self.x - epsilon + self.g * self.x_op, dtype=np.float64)

    @property
    def cell(self) -> float:
        return float(self.x[1] - self.x[0])


def default_x_range(model: AdiabaticModel, g: float) -> tuple[float, float]:
    """Displacement bracket [-0.05, 1.05] B_x / g."""
    return (-0.05 * model.b_x / g, 1.05 * model.b_x / g)


def _classify(
    model: AdiabaticModel, cavity: CavityParams, alpha_value: float, x: float
) -> StationaryPoint:
    b_eff = model.b_x - cavity.g * x
    slope = x_ss_prime(model, b_eff)
    residual = abs(alpha_value * x - cavity.epsilon + cavity.g * model.x_ss(b_eff))
    stability = Stability.STABLE if alpha_value - cavity.g**2 * slope > 0 else Stability.UNSTABLE
    return StationaryPoint(
        x_ss=x, b_eff=b_eff, stability=stability, x_ss_prime=slope, residual=residual
    )


def _bracket_roots(residuals: FloatArray) -> list[int]:
    signs = np.sign(residuals)
    return [int(i) for i in np.flatnonzero(signs[:-1] * signs[1:] <= 0) if signs[i + 1] != 0]


def stationary_points(
    model: AdiabaticModel,
    cavity: CavityParams,
    x_range: tuple[float, float] | None = None,
    settings: SolverSettings | None = None,
    grid: StationaryGrid | None = None,
) -> list[StationaryPoint]:
    """All stationary displacements in the bracket, ascending in x.

    Roots are bracketed by sign changes on a uniform grid, refined with
    Brent's method and tagged by the sign of alpha - g^2 X'_ss. The grid is
    doubled while two roots sit within three cells of each other.

    Args:
        model: Adiabatic model
        cavity: Cavity parameters (alpha must be positive)
        x_range: Displacement bracket (default [-0.05, 1.05] B_x / g)
        settings: Numerical settings (default: the model's)
        grid: Precomputed grid for this model and g

    Returns:
        Stationary points ordered by x_ss

    Raises:
        InvalidInputError: If alpha <= 0
        EmptyResultError: If no root lies in the bracket
    """
    settings = settings or model.settings
    alpha_value = cavity.alpha
    if not alpha_value > 0:
        raise InvalidInputError(f"Stationary points need alpha > 0, got {alpha_value:.6g}")

    if cavity.g == 0.0:
        x = cavity.epsilon / alpha_value
        return [StationaryPoint(x_ss=x, b_eff=model.b_x, stability=Stability.STABLE)]

    bracket = x_range or default_x_range(model, cavity.g)
    if grid is None:
        grid = StationaryGrid.build(model, cavity.g, bracket, settings.root_grid)

    def root_function(x: float) -> float:
        return alpha_value * x - cavity.epsilon + cavity.g * model.x_ss(model.b_x - cavity.g * x)

    cells = _bracket_roots(grid.residuals(alpha_value, cavity.epsilon))
    doublings = 0
    while len(cells) >= 2 and min(np.diff(cells)) < 3 and doublings < settings.max_grid_doublings:
        grid = StationaryGrid.build(model, cavity.g, bracket, 2 * grid.x.size - 1)
        cells = _bracket_roots(grid.residuals(alpha_value, cavity.epsilon))
        doublings += 1
        logger.debug("Refined stationary grid to %d points", grid.x.size)

    residuals = grid.residuals(alpha_value, cavity.epsilon)
    roots: list[float] = []
    for i in cells:
        lo, hi = float(grid.x[i]), float(grid.x[i + 1])
        if residuals[i] == 0.0:
            roots.append(lo)
            continue
        roots.append(float(brentq(root_function, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)))

    if not roots:
        raise EmptyResultError(
            f"No stationary point for eps={cavity.epsilon:.6g} in x in [{bracket[0]:.6g}, "
            f"{bracket[1]:.6g}]"
        )

    tolerance = settings.root_tol * max(abs(cavity.epsilon), 1.0)
    points = [_classify(model, cavity, alpha_value, x) for x in sorted(set(roots))]
    for point in points:
        if point.residual > tolerance:
            logger.debug("Stationary residual %.3e above %.3e", point.residual, tolerance)
    return points


def upper_branch(points: list[StationaryPoint]) -> StationaryPoint:
    """The stable point with the largest effective field."""
    stable = [p for p in points if p.is_stable] or points
    return max(stable, key=lambda p: p.b_eff)


def lower_branch(points: list[StationaryPoint]) -> StationaryPoint:
    """The stable point with the smallest effective field."""
    stable = [p for p in points if p.is_stable] or points
    return min(stable, key=lambda p: p.b_eff)


def _scan_roots(
    function: Callable[[float], float], lo: float, hi: float, n: int
) -> list[float]:
    grid = np.linspace(lo, hi, n)
    values = np.array([function(float(b)) for b in grid])
    roots: list[float] = []
    for i in _bracket_roots(values):
        if values[i] == 0.0:
            roots.append(float(grid[i]))
        else:
            roots.append(float(brentq(function, float(grid[i]), float(grid[i + 1]), xtol=1e-13)))
    return roots


def bifurcation_points(
    model: AdiabaticModel,
    cavity: CavityParams,
    control: ControlKind = ControlKind.EPSILON,
    settings: SolverSettings | None = None,
) -> list[BifurcationPoint]:
    """Turning points of the stationary curve on B in [0, B_x].

    Drive control solves X'_ss(B) = alpha / g^2 and reports
    eps_i = alpha x_i + g X_ss(B_i). Detuning control holds eps fixed, solves
    g X'_ss(B)(B_x - B) + g X_ss(B) = eps, then inverts alpha(Delta) =
    g^2 X'_ss(B_i) on the branch |Delta| >= kappa / 2.

    Returns:
        Points sorted by control value

    Raises:
        InvalidInputError: If drive control is requested with alpha <= 0
        EmptyResultError: If the fold condition has no solution
    """
    settings = settings or model.settings
    if cavity.g == 0.0:
        raise EmptyResultError("No bifurcation without coupling (g = 0)")
    g, b_x = cavity.g, model.b_x
    n = settings.bifurcation_grid

    points: list[BifurcationPoint] = []
    if control is ControlKind.EPSILON:
        alpha_value = cavity.alpha
        if not alpha_value > 0:
            raise InvalidInputError(f"Bifurcations need alpha > 0, got {alpha_value:.6g}")
        level = alpha_value / g**2
        for b_i in _scan_roots(lambda b: x_ss_prime(model, b) - level, 0.0, b_x, n):
            x_i = (b_x - b_i) / g
            eps_i = alpha_value * x_i + g * model.x_ss(b_i)
            points.append(BifurcationPoint(b_eff=b_i, x=x_i, control_value=eps_i))
    else:
        half_kappa = cavity.kappa / 2.0

        def fold(b: float) -> float:
            return g * x_ss_prime(model, b) * (b_x - b) + g * model.x_ss(b) - cavity.epsilon

        for b_i in _scan_roots(fold, 0.0, b_x, n):
            alpha_i = g**2 * x_ss_prime(model, b_i)
            if alpha_i < half_kappa:
                continue
            delta_i = -alpha_i - float(np.sqrt(alpha_i**2 - half_kappa**2))
            points.append(
                BifurcationPoint(
                    b_eff=b_i,
                    x=(b_x - b_i) / g,
                    control_value=delta_i,
                    control_kind=ControlKind.DELTA_C,
                )
            )

    if not points:
        raise EmptyResultError(
            f"No bifurcation point for {control.value} control "
            f"(alpha/g^2 = {cavity.alpha_over_g2:.6g})"
        )
    return sorted(points, key=lambda p: p.control_value)


def secular_frequencies(x_ss_prime_value: float, cavity: CavityParams) -> tuple[complex, complex]:
    """omega_+- = -kappa/2 +- sqrt(-2 Delta g^2 X'_ss - Delta^2), principal branch."""
    radicand = -2.0 * cavity.delta_c * cavity.g**2 * x_ss_prime_value - cavity.delta_c**2
    root = complex(np.sqrt(complex(radicand)))
    return (-cavity.kappa / 2.0 + root, -cavity.kappa / 2.0 - root)


def linearization_matrix(x_ss_prime_value: float, cavity: CavityParams) -> FloatArray:
    """Fluctuation matrix of (delta Re a, delta Im a) about a stationary point.

    Its eigenvalues are the secular frequencies.
    """
    return np.array(
        [
            [-cavity.kappa / 2.0, -cavity.delta_c],
            [cavity.delta_c + 2.0 * cavity.g**2 * x_ss_prime_value, -cavity.kappa / 2.0],
        ]
    )


def _sweep_value(
    model: AdiabaticModel,
    cavity: CavityParams,
    control: ControlKind,
    grid: StationaryGrid | None,
    value: float,
) -> list[SweepRow]:
    if control is ControlKind.EPSILON:
        point_cavity = cavity.with_epsilon(value)
    else:
        point_cavity = cavity.with_detuning(value)
    empty = [SweepRow(control=value, x_ss=np.nan, b_eff=np.nan, stability=None, empty=True)]
    try:
        if point_cavity.delta_c == 0.0 or not point_cavity.alpha > 0:
            return empty
        points = stationary_points(model, point_cavity, grid=grid)
    except (EmptyResultError, ZeroDetuningError):
        return empty

    rows = []
    for point in points:
        omega_plus, omega_minus = secular_frequencies(point.x_ss_prime, point_cavity)
        rows.append(
            SweepRow(
                control=value,
                x_ss=point.x_ss,
                b_eff=point.b_eff,
                stability=point.stability,
                re_omega_plus=omega_plus.real,
                re_omega_minus=omega_minus.real,
            )
        )
    return rows


def sweep_control(
    model: AdiabaticModel,
    cavity: CavityParams,
    control: ControlKind,
    value_range: tuple[float, float],
    n: int,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
) -> list[SweepRow]:
    """Stationary points over a uniform grid of one control.

    Detuning sweeps recompute alpha per value. Values without a root yield
    one empty row. Rows are ordered by control value, then by x_ss,
    independent of ``workers``.

    Raises:
        InvalidInputError: If n < 2
    """
    if n < 2:
        raise InvalidInputError(f"A sweep needs at least 2 points, got {n}")
    values = np.linspace(value_range[0], value_range[1], n)
    return sweep_values(
        model, cavity, control, [float(v) for v in values], workers, on_progress
    )


def sweep_values(
    model: AdiabaticModel,
    cavity: CavityParams,
    control: ControlKind,
    values: Sequence[float],
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
) -> list[SweepRow]:
    """Stationary points at explicit control values, in the given order."""
    n = len(values)
    grid = None
    if cavity.g != 0.0:
        grid = StationaryGrid.build(
            model, cavity.g, default_x_range(model, cavity.g), model.settings.root_grid
        )

    if on_progress:
        on_progress(f"Sweeping {control.value} over {n} values...")

    task = partial(_sweep_value, model, cavity, control, grid)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            chunks = list(executor.map(task, [float(v) for v in values]))
    else:
        chunks = [task(float(v)) for v in values]

    rows = [row for chunk in chunks for row in chunk]
    if on_progress:
        empty = sum(1 for row in rows if row.empty)
        on_progress(f"Sweep done: {len(rows)} rows, {empty} without a stationary point")
    return rows


def follow_branch(rows: list[SweepRow], direction: str = "up") -> list[SweepRow]:
    """Continue the stable branch through a sweep table.

    Starting at the first control value of the traversal, each step keeps the
    stable point nearest to the previous displacement, jumping to the other
    branch only when the followed one has vanished.

    Args:
        rows: Output of ``sweep_control``
        direction: "up" (increasing control) or "down"

    Returns:
        One selected row per control value, ordered by increasing control

    Raises:
        InvalidInputError: For an unknown direction
    """
    if direction not in ("up", "down"):
        raise InvalidInputError(f"direction must be 'up' or 'down', got {direction!r}")

    by_control: dict[float, list[SweepRow]] = {}
    for row in rows:
        if not row.empty and row.stability is Stability.STABLE:
            by_control.setdefault(row.control, []).append(row)

    controls = sorted(by_control, reverse=direction == "down")
    selected: list[SweepRow] = []
    previous: float | None = None
    for value in controls:
        candidates = by_control[value]
        if previous is None:
            choice = min(candidates, key=lambda r: r.x_ss if direction == "up" else -r.x_ss)
        else:
            anchor = previous
            choice = min(candidates, key=lambda r: abs(r.x_ss - anchor))
        selected.append(choice)
        previous = choice.x_ss
    return sorted(selected, key=lambda r: r.control)


def x_ss_prime_max(model: AdiabaticModel, settings: SolverSettings | None = None) -> float:
    """Largest X'_ss on [0, B_x]: uniform grid plus refinement near the peak and the gap."""
    settings = settings or model.settings
    coarse = np.linspace(0.0, model.b_x, settings.feasibility_grid)
    values = np.array([x_ss_prime(model, float(b)) for b in coarse])
    cell = coarse[1] - coarse[0]

    centers = [float(coarse[int(np.argmax(values))])]
    try:
        centers.append(gap_location(model).b_gap)
    except InvalidInputError:
        pass

    best = float(np.max(values))
    for center in centers:
        fine = np.linspace(max(center - cell, 0.0), min(center + cell, model.b_x), 41)
        best = max(best, max(x_ss_prime(model, float(b)) for b in fine))
    return best


def feasibility_check(
    model: AdiabaticModel, cavity: CavityParams, settings: SolverSettings | None = None
) -> FeasibilityReport:
    """Evaluate the protocol's three feasibility conditions and its endpoint drives.

    Conditions: (1) Delta_c < 0; (2) X'_ss(0) < alpha/g^2 < max X'_ss;
    (3) X_ss(B_x)/B_x < alpha/g^2. Never raises on a failed condition.
    """
    settings = settings or model.settings
    try:
        alpha_value = alpha(cavity.delta_c, cavity.kappa)
    except ZeroDetuningError:
        alpha_value = float("nan")
    level = alpha_value / cavity.g**2 if cavity.g != 0.0 else float("inf")

    prime_zero = x_ss_prime(model, 0.0)
    prime_max = x_ss_prime_max(model, settings)
    x_full = model.x_ss(model.b_x)

    bifurcations: tuple[BifurcationPoint, ...] = ()
    if alpha_value > 0 and cavity.g != 0.0:
        try:
            bifurcations = tuple(bifurcation_points(model, cavity, settings=settings))
        except EmptyResultError:
            pass

    eps_f = (
        alpha_value * model.b_x / cavity.g + cavity.g * model.x_ss(0.0)
        if cavity.g != 0.0
        else float("inf")
    )
    return FeasibilityReport(
        negative_detuning=cavity.delta_c < 0,
        bifurcation_window=bool(prime_zero < level < prime_max),
        endpoint_order=bool(x_full / model.b_x < level),
        alpha=alpha_value,
        alpha_over_g2=level,
        x_ss_prime_at_zero=prime_zero,
        x_ss_prime_max=prime_max,
        eps0=cavity.g * x_full,
        eps_f=eps_f,
        bifurcations=bifurcations,
    )


__all__ = [
    "alpha",
    "StationaryGrid",
    "stationary_points",
    "upper_branch",
    "lower_branch",
    "bifurcation_points",
    "secular_frequencies",
    "linearization_matrix",
    "sweep_control",
    "sweep_values",
    "follow_branch",
    "x_ss_prime_max",
    "feasibility_check",
]
