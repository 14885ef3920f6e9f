"""Spectral result types."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) with orthonormal eigenvector columns."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: npt.NDArray[np.float64]

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def ground_state(self) -> npt.NDArray[np.float64]:
        return self.eigenvectors[:, 0]

    @property
    def gap(self) -> float:
        """E_1 - E_0 (infinite for a one-dimensional space)."""
        if self.eigenvalues.size < 2:
            return float("inf")
        return float(self.eigenvalues[1] - self.eigenvalues[0])


@dataclass(frozen=True)
class GroundObservables:
    """Ground-state operator average and its derivative at one effective field.

    Attributes:
        b_eff: Effective field
        x_ss: <psi_G|H_0|psi_G>
        x_ss_prime: dX_ss/dB_eff
        gap: E_1 - E_0 (TFIM: min_k eps_k)
        degenerate: True when the gap is below the degeneracy tolerance
        fd_drift: Relative change of x_ss_prime on halving the step
    """

    b_eff: float
    x_ss: float
    x_ss_prime: float
    gap: float
    degenerate: bool = False
    fd_drift: float = 0.0

    def to_record(self) -> dict[str, float]:
        """Row for observables.csv."""
        return {
            "b_eff": self.b_eff,
            "x_ss": self.x_ss,
            "x_ss_prime": self.x_ss_prime,
            "gap": self.gap,
        }


@dataclass(frozen=True)
class GapLocation:
    """Position and value of the minimum gap over a field range.

    ``interior`` is False when the gap is monotone over the range and the
    endpoint was returned.
    """

    b_gap: float
    gap_min: float
    interior: bool = True


__all__ = ["Spectrum", "GroundObservables", "GapLocation"]
