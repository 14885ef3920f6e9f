"""Adiabatic model contract shared by the dense and BdG backends."""

from abc import ABC, abstractmethod

import numpy as np
import numpy.typing as npt

from ..models.domain.spec import ModelKind, ModelSpec
from ..models.domain.trajectory import ComplexArray, QuantumState
from ..settings import DEFAULT_SETTINGS, SolverSettings


class AdiabaticModel(ABC):
    """A family of Hamiltonians H_s(B) = -B H_0 - J H_T indexed by the effective field.

    Implementations expose ground-state analytics (X_ss, gaps, levels), the
    Schrodinger right-hand side used by the integrator, and the excitation
    metric of an arbitrary state against the instantaneous ground state.

    Attributes:
        spec: Model description
        settings: Numerical settings
        lz_rate_factor: Ratio between the diabatic splitting rate at the
            avoided crossing and |dB_eff/dt|, used by the Landau-Zener estimate
    """

    lz_rate_factor: float = 1.0

    def __init__(self, spec: ModelSpec, settings: SolverSettings = DEFAULT_SETTINGS) -> None:
        self.spec = spec
        self.settings = settings

    @property
    def kind(self) -> ModelKind:
        return self.spec.kind

    @property
    def b_x(self) -> float:
        return self.spec.b_x

    @property
    def j0(self) -> float:
        return self.spec.j0

    @property
    def n_qubits(self) -> int:
        return self.spec.n_qubits

    @property
    def signed_j0(self) -> float:
        """Coefficient multiplying -H_T in H_s.

        Exact Cover uses -|J_0| so violated clauses cost energy.
        """
        return -self.spec.j0 if self.spec.kind is ModelKind.EC else self.spec.j0

    @property
    def is_bdg(self) -> bool:
        return False

    @abstractmethod
    def ground_state(self, b_eff: float) -> QuantumState:
        """Instantaneous ground state of H_s(b_eff)."""

    @abstractmethod
    def ground_energy(self, b_eff: float) -> float:
        """Lowest eigenvalue of H_s(b_eff)."""

    @abstractmethod
    def gap(self, b_eff: float) -> float:
        """Gap at b_eff in the model's convention."""

    @abstractmethod
    def levels(self, b_eff: float, n_levels: int) -> npt.NDArray[np.float64]:
        """Lowest ``n_levels`` energies, ascending."""

    @abstractmethod
    def hamiltonian_scale(self, b_eff: float) -> float:
        """Norm estimate of H_s(b_eff), for relative tolerances."""

    @abstractmethod
    def expectation_h0(self, state: QuantumState) -> float:
        """<psi|H_0|psi> of a normalized state."""

    @abstractmethod
    def excitation_probability(self, state: QuantumState, b_eff: float) -> float:
        """Weight of ``state`` outside the instantaneous ground state at b_eff."""

    @abstractmethod
    def ground_fidelity(self, state: QuantumState, b_eff: float) -> float:
        """|<psi_G(b_eff)|psi>|^2 (product over modes for BdG)."""

    @abstractmethod
    def x_ss_prime_perturbative(self, b_eff: float) -> float:
        """2 sum_n |<n|H_0|G>|^2 / (E_n - E_G)."""

    @abstractmethod
    def schrodinger_rhs(self, amplitudes: ComplexArray, b_eff: float) -> ComplexArray:
        """-i H_s(b_eff) psi on the flat amplitude vector."""

    @abstractmethod
    def normalize(self, amplitudes: ComplexArray) -> tuple[ComplexArray, float]:
        """Project a flat amplitude vector back to unit (mode) norm.

        Returns:
            Normalized copy and the norm defect before projection
        """

    @abstractmethod
    def wrap_state(self, amplitudes: ComplexArray) -> QuantumState:
        """Build a QuantumState from a flat amplitude vector."""

    def x_ss(self, b_eff: float) -> float:
        """Ground-state operator average X_ss(b_eff)."""
        return self.expectation_h0(self.ground_state(b_eff))

    def x_ss_grid(self, b_values: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        """X_ss over an array of fields."""
        return np.array([self.x_ss(float(b)) for b in b_values], dtype=np.float64)

    def x_ss_prime_analytic(self, b_eff: float) -> float | None:
        """Closed-form X'_ss where available, otherwise None."""
        return None

    def is_degenerate(self, b_eff: float) -> bool:
        """True when the gap is below degeneracy_tol relative to ||H_s||."""
        scale = max(self.hamiltonian_scale(b_eff), 1.0)
        return self.gap(b_eff) < self.settings.degeneracy_tol * scale

    def gap_search_range(self) -> tuple[float, float]:
        """Field interval scanned for the minimum gap."""
        return (0.0, self.spec.b_x)

    def x_limits(self) -> tuple[float, float]:
        """Bounds of X_ss over all fields."""
        return (0.0, float(self.spec.n_qubits))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(kind={self.kind.value}, n={self.n_qubits})"


__all__ = ["AdiabaticModel"]
