"""Transverse-field Ising chain in the Bogoliubov-de Gennes pair basis.

After the Jordan-Wigner transformation the even-parity sector of the
periodic chain decouples into N/2 two-level problems, one per
quasimomentum pair (+k, -k) with k = (2m - 1) pi / N. Each pair state is
(U_k, V_k): the amplitudes of the empty pair and the doubly occupied pair.
"""

import numpy as np
import numpy.typing as npt

from ..exceptions import InvalidInputError, InvalidSpecError
from ..models.domain.spec import ModelKind, ModelSpec
from ..models.domain.trajectory import ComplexArray, QuantumState
from ..settings import DEFAULT_SETTINGS, SolverSettings
from .base import AdiabaticModel

FloatArray = npt.NDArray[np.float64]


def tfim_modes(n: int) -> FloatArray:
    """Quasimomenta (2m - 1) pi / N for m = 1..N/2, ascending.

    Raises:
        InvalidSpecError: If n is odd or below 2
    """
    if n < 2 or n % 2 != 0:
        raise InvalidSpecError(f"TFIM mode grid needs an even N >= 2, got {n}")
    return (2.0 * np.arange(1, n // 2 + 1) - 1.0) * np.pi / n


def tfim_quasiparticle_energy(
    k: float | FloatArray, b_eff: float, j0: float
) -> float | FloatArray:
    """eps_k = 2 sqrt(J^2 + B^2 - 2 B J cos k); vectorized over k."""
    radicand = j0**2 + b_eff**2 - 2.0 * b_eff * j0 * np.cos(k)
    energy = 2.0 * np.sqrt(np.maximum(radicand, 0.0))
    if np.ndim(energy) == 0:
        return float(energy)
    return np.asarray(energy, dtype=np.float64)


def tfim_bdg_hamiltonian(k: float, b_eff: float, j0: float) -> FloatArray:
    """2x2 pair Hamiltonian [[-2(B - J cos k), -2 J sin k], [-2 J sin k, 2(B - J cos k)]]."""
    diagonal = 2.0 * (b_eff - j0 * np.cos(k))
    off_diagonal = -2.0 * j0 * np.sin(k)
    return np.array([[-diagonal, off_diagonal], [off_diagonal, diagonal]])


def tfim_x_from_modes(state: QuantumState, n: int) -> float:
    """<sum_j sigma_x^j> = N - 4 sum_k |V_k|^2 for a BdG state.

    Raises:
        InvalidInputError: If the state is not a BdG state with N/2 modes
    """
    if not state.bdg or state.amplitudes.shape[0] != n // 2:
        raise InvalidInputError(f"Expected a BdG state with {n // 2} modes")
    return float(n - 4.0 * np.sum(np.abs(state.amplitudes[:, 1]) ** 2))


class BdGModel(AdiabaticModel):
    """TFIM model evolved mode by mode.

    ``gap`` follows the single-quasiparticle convention min_k eps_k.

    Attributes:
        modes: Quasimomenta, strictly increasing in (0, pi)
    """

    def __init__(self, spec: ModelSpec, settings: SolverSettings = DEFAULT_SETTINGS) -> None:
        if spec.kind is not ModelKind.TFIM:
            raise InvalidSpecError(f"BdGModel needs a TFIM spec, got {spec.kind.value}")
        super().__init__(spec, settings)
        self.modes = tfim_modes(spec.n_qubits)
        self._cos_k = np.cos(self.modes)
        self._sin_k = np.sin(self.modes)

    @property
    def is_bdg(self) -> bool:
        return True

    @property
    def n_modes(self) -> int:
        return int(self.modes.size)

    def _components(self, b_eff: float) -> tuple[FloatArray, FloatArray, FloatArray]:
        # eps_k cos 2theta_k, eps_k sin 2theta_k, eps_k
        diagonal = 2.0 * (b_eff - self.j0 * self._cos_k)
        coupling = 2.0 * self.j0 * self._sin_k
        return diagonal, coupling, np.hypot(diagonal, coupling)

    def quasiparticle_energies(self, b_eff: float) -> FloatArray:
        return self._components(b_eff)[2]

    def bogoliubov_angles(self, b_eff: float) -> FloatArray:
        """theta_k with cos 2theta_k = 2(B - J cos k)/eps_k, sin 2theta_k = 2 J sin k/eps_k."""
        diagonal, coupling, _ = self._components(b_eff)
        return 0.5 * np.arctan2(coupling, diagonal)

    def ground_state(self, b_eff: float) -> QuantumState:
        theta = self.bogoliubov_angles(b_eff)
        return QuantumState.modes(np.column_stack([np.cos(theta), np.sin(theta)]))

    def ground_energy(self, b_eff: float) -> float:
        return float(-np.sum(self.quasiparticle_energies(b_eff)))

    def gap(self, b_eff: float) -> float:
        return float(np.min(self.quasiparticle_energies(b_eff)))

    def levels(self, b_eff: float, n_levels: int) -> FloatArray:
        """Ground energy followed by the lowest single-pair excitations E_0 + 2 eps_k."""
        eps = np.sort(self.quasiparticle_energies(b_eff))
        ground = -float(np.sum(eps))
        excited = ground + 2.0 * eps[: max(n_levels - 1, 0)]
        return np.concatenate([[ground], excited])[:n_levels]

    def hamiltonian_scale(self, b_eff: float) -> float:
        return float(np.sum(self.quasiparticle_energies(b_eff)))

    def x_ss(self, b_eff: float) -> float:
        """Closed form 2 sum_k cos 2theta_k."""
        diagonal, _, eps = self._components(b_eff)
        return float(2.0 * np.sum(diagonal / eps))

    def x_ss_grid(self, b_values: FloatArray) -> FloatArray:
        fields = np.asarray(b_values, dtype=np.float64)[:, None]
        diagonal = 2.0 * (fields - self.j0 * self._cos_k[None, :])
        eps = np.hypot(diagonal, 2.0 * self.j0 * self._sin_k[None, :])
        return np.asarray(2.0 * np.sum(diagonal / eps, axis=1), dtype=np.float64)

    def _x_prime_closed_form(self, b_eff: float) -> float:
        _, coupling, eps = self._components(b_eff)
        return float(4.0 * np.sum(coupling**2 / eps**3))

    def x_ss_prime_analytic(self, b_eff: float) -> float | None:
        """Closed form 4 sum_k (2 J sin k)^2 / eps_k^3."""
        return self._x_prime_closed_form(b_eff)

    def x_ss_prime_perturbative(self, b_eff: float) -> float:
        # Only pair excitations couple to H_0; the sum collapses to the closed form.
        return self._x_prime_closed_form(b_eff)

    def expectation_h0(self, state: QuantumState) -> float:
        return tfim_x_from_modes(state, self.n_qubits)

    def excited_amplitudes(self, state: QuantumState, b_eff: float) -> ComplexArray:
        """beta_k: projection of each pair state on the excited pair eigenvector."""
        theta = self.bogoliubov_angles(b_eff)
        pairs = state.amplitudes
        return -np.sin(theta) * pairs[:, 0] + np.cos(theta) * pairs[:, 1]

    def excitation_probability(self, state: QuantumState, b_eff: float) -> float:
        """N_c = sum_k |beta_k|^2."""
        return float(np.sum(np.abs(self.excited_amplitudes(state, b_eff)) ** 2))

    def ground_fidelity(self, state: QuantumState, b_eff: float) -> float:
        """prod_k (1 - |beta_k|^2)."""
        beta_sq = np.abs(self.excited_amplitudes(state, b_eff)) ** 2
        return float(np.prod(np.clip(1.0 - beta_sq, 0.0, 1.0)))

    def schrodinger_rhs(self, amplitudes: ComplexArray, b_eff: float) -> ComplexArray:
        diagonal, coupling, _ = self._components(b_eff)
        pairs = amplitudes.reshape(-1, 2)
        u, v = pairs[:, 0], pairs[:, 1]
        du = -1j * (-diagonal * u - coupling * v)
        dv = -1j * (-coupling * u + diagonal * v)
        return np.column_stack([du, dv]).reshape(-1)

    def normalize(self, amplitudes: ComplexArray) -> tuple[ComplexArray, float]:
        pairs = amplitudes.reshape(-1, 2)
        norms = np.sum(np.abs(pairs) ** 2, axis=1)
        defect = float(np.max(np.abs(norms - 1.0)))
        return (pairs / np.sqrt(norms)[:, None]).reshape(-1), defect

    def wrap_state(self, amplitudes: ComplexArray) -> QuantumState:
        return QuantumState.modes(amplitudes.reshape(-1, 2))

    def mode_lz_probabilities(self, rate: float) -> FloatArray:
        """Per-mode Landau-Zener probabilities, each mode crossing at rate ``rate``."""
        if rate <= 0.0:
            return np.zeros(self.n_modes)
        min_energy = 2.0 * self.j0 * self._sin_k
        return np.exp(-np.pi * min_energy**2 / (2.0 * rate))


__all__ = [
    "BdGModel",
    "tfim_modes",
    "tfim_quasiparticle_energy",
    "tfim_bdg_hamiltonian",
    "tfim_x_from_modes",
]
