"""Dense eigendecomposition and the ground-state observables built on it.

X_ss(B) = <psi_G|H_0|psi_G> and its derivative X'_ss(B) drive everything in
the mean-field layer. X'_ss is computed by central differences with a
Richardson step-halving check; the second-order perturbative sum is kept as
an independent cross-check.
"""

import logging
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
import scipy.linalg
from scipy.optimize import minimize_scalar

from .exceptions import DegenerateGroundError, InvalidInputError
from .models.domain.observables import GapLocation, GroundObservables, Spectrum
from .settings import DEFAULT_SETTINGS, SolverSettings

if TYPE_CHECKING:
    from .hamiltonians.base import AdiabaticModel

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


def eigh(h: npt.ArrayLike, settings: SolverSettings = DEFAULT_SETTINGS) -> Spectrum:
    """Full spectrum of a real symmetric matrix.

    Args:
        h: Square real symmetric matrix
        settings: Supplies ``max_dim`` and ``symmetry_tol``

    Returns:
        Spectrum with ascending eigenvalues and orthonormal eigenvector columns

    Raises:
        InvalidInputError: If the matrix is not square, exceeds the dimension
            cap, or is asymmetric beyond tolerance
    """
    matrix = np.asarray(h, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidInputError(f"Expected a square matrix, got shape {matrix.shape}")
    dim = matrix.shape[0]
    if dim > settings.max_dim:
        raise InvalidInputError(f"Dimension {dim} exceeds the cap of {settings.max_dim}")

    scale = max(float(np.max(np.abs(matrix))) if dim else 0.0, 1.0)
    asymmetry = float(np.max(np.abs(matrix - matrix.T))) if dim else 0.0
    if asymmetry > settings.symmetry_tol * scale:
        raise InvalidInputError(f"Matrix is not symmetric (max |H - H^T| = {asymmetry:.3e})")

    eigenvalues, eigenvectors = scipy.linalg.eigh(0.5 * (matrix + matrix.T))
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def perturbative_sum(spectrum: Spectrum, h0: FloatArray) -> float:
    """2 sum_{n>0} |<n|H_0|0>|^2 / (E_n - E_0) over a full spectrum."""
    vectors = spectrum.eigenvectors
    couplings = vectors[:, 1:].T @ (h0 @ vectors[:, 0])
    denominators = spectrum.eigenvalues[1:] - spectrum.eigenvalues[0]
    return float(2.0 * np.sum(couplings**2 / denominators))


def tls_xss_analytic(b_eff: float, b_x: float, j0: float) -> float:
    """Closed-form two-level X_ss = (2B - B_x) / sqrt((2B - B_x)^2 + J_0^2)."""
    detuned = 2.0 * b_eff - b_x
    return float(detuned / np.sqrt(detuned**2 + j0**2))


def tls_xss_prime_analytic(b_eff: float, b_x: float, j0: float) -> float:
    """Derivative of ``tls_xss_analytic``: 2 J_0^2 / ((2B - B_x)^2 + J_0^2)^(3/2)."""
    detuned = 2.0 * b_eff - b_x
    return float(2.0 * j0**2 / (detuned**2 + j0**2) ** 1.5)


def _central_difference(model: "AdiabaticModel", b_eff: float, step: float) -> float:
    return (model.x_ss(b_eff + step) - model.x_ss(b_eff - step)) / (2.0 * step)


def ground_observables(
    model: "AdiabaticModel",
    b_eff: float,
    fd_step: float | None = None,
    settings: SolverSettings | None = None,
) -> GroundObservables:
    """X_ss, X'_ss and the gap at one effective field.

    X'_ss is the Richardson extrapolation of central differences with steps
    h and h/2; ``fd_drift`` records their relative disagreement.

    Args:
        model: Adiabatic model
        b_eff: Effective field
        fd_step: Difference step (default ``fd_step_scale * J_0``)
        settings: Numerical settings (default: the model's)

    Returns:
        GroundObservables; ``degenerate`` is set instead of raising

    Raises:
        InvalidInputError: If fd_step is not positive
    """
    settings = settings or model.settings
    step = settings.fd_step_scale * model.j0 if fd_step is None else fd_step
    if not step > 0:
        raise InvalidInputError(f"fd_step must be positive, got {step}")

    coarse = _central_difference(model, b_eff, step)
    fine = _central_difference(model, b_eff, step / 2.0)
    drift = abs(fine - coarse) / max(abs(fine), np.finfo(float).tiny)
    if drift > settings.fd_drift_tol:
        logger.debug("X' finite-difference drift %.3e at B=%.6g", drift, b_eff)

    return GroundObservables(
        b_eff=b_eff,
        x_ss=model.x_ss(b_eff),
        x_ss_prime=(4.0 * fine - coarse) / 3.0,
        gap=model.gap(b_eff),
        degenerate=model.is_degenerate(b_eff),
        fd_drift=drift,
    )


def x_ss_prime(model: "AdiabaticModel", b_eff: float) -> float:
    """X'_ss at one field: closed form when the model has one, else finite differences."""
    analytic = model.x_ss_prime_analytic(b_eff)
    if analytic is not None:
        return analytic
    return ground_observables(model, b_eff).x_ss_prime


def xss_prime_perturbative(model: "AdiabaticModel", b_eff: float) -> float:
    """Second-order perturbative X'_ss = 2 sum_n |<n|H_0|G>|^2 / (E_n - E_G).

    Raises:
        DegenerateGroundError: If the ground state at b_eff is degenerate
    """
    if model.is_degenerate(b_eff):
        raise DegenerateGroundError(
            f"Ground state is degenerate at B={b_eff:.6g}; perturbative X' undefined",
            b_eff=b_eff,
        )
    return model.x_ss_prime_perturbative(b_eff)


def gap_location(
    model: "AdiabaticModel",
    b_range: tuple[float, float] | None = None,
    n_samples: int = 200,
) -> GapLocation:
    """Locate the minimum gap: coarse scan, then golden-section refinement.

    Args:
        model: Adiabatic model
        b_range: Field interval (default: the model's search range)
        n_samples: Coarse grid points (>= 3)

    Returns:
        GapLocation; ``interior`` is False when the minimum sits on an endpoint

    Raises:
        InvalidInputError: If n_samples < 3 or the interval is empty
    """
    if n_samples < 3:
        raise InvalidInputError(f"n_samples must be >= 3, got {n_samples}")
    lo, hi = b_range if b_range is not None else model.gap_search_range()
    if not hi > lo:
        raise InvalidInputError(f"Empty field range [{lo}, {hi}]")

    grid = np.linspace(lo, hi, n_samples)
    gaps = np.array([model.gap(float(b)) for b in grid])
    best = int(np.argmin(gaps))
    if best in (0, n_samples - 1):
        logger.debug("Gap is monotone on [%g, %g]; returning endpoint", lo, hi)
        return GapLocation(b_gap=float(grid[best]), gap_min=float(gaps[best]), interior=False)

    bracket = (float(grid[best - 1]), float(grid[best]), float(grid[best + 1]))
    try:
        result = minimize_scalar(model.gap, bracket=bracket, method="golden", tol=1e-10)
    except ValueError:
        return GapLocation(b_gap=float(grid[best]), gap_min=float(gaps[best]))

    if bracket[0] <= result.x <= bracket[2] and result.fun <= gaps[best]:
        return GapLocation(b_gap=float(result.x), gap_min=float(result.fun))
    return GapLocation(b_gap=float(grid[best]), gap_min=float(gaps[best]))


def spectrum_scan(
    model: "AdiabaticModel", b_values: npt.ArrayLike, n_levels: int = 4
) -> FloatArray:
    """Lowest ``n_levels`` energies at each field, shape (len(b_values), n_levels)."""
    if n_levels < 1:
        raise InvalidInputError(f"n_levels must be >= 1, got {n_levels}")
    fields = np.asarray(b_values, dtype=np.float64)
    return np.vstack([model.levels(float(b), n_levels) for b in fields])


def observables_scan(
    model: "AdiabaticModel", b_values: npt.ArrayLike
) -> list[GroundObservables]:
    """ground_observables over a field grid, in grid order."""
    return [ground_observables(model, float(b)) for b in np.asarray(b_values, dtype=np.float64)]


__all__ = [
    "eigh",
    "perturbative_sum",
    "tls_xss_analytic",
    "tls_xss_prime_analytic",
    "ground_observables",
    "x_ss_prime",
    "xss_prime_perturbative",
    "gap_location",
    "spectrum_scan",
    "observables_scan",
]
