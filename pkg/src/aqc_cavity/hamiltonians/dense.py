"""Dense-matrix models: two-level system, Exact Cover and the small TFIM oracle."""

import numpy as np
import numpy.typing as npt

from ..exceptions import DegenerateGroundError, InvalidInputError, InvalidSpecError
from ..models.domain.instance import ECInstance, basis_bits, violation_table
from ..models.domain.observables import Spectrum
from ..models.domain.spec import ModelKind, ModelSpec
from ..models.domain.trajectory import ComplexArray, QuantumState
from ..settings import DEFAULT_SETTINGS, SolverSettings
from ..spectral import eigh, perturbative_sum, tls_xss_analytic, tls_xss_prime_analytic
from .base import AdiabaticModel

FloatArray = npt.NDArray[np.float64]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])

_SPECTRUM_CACHE_SIZE = 256


class DenseModel(AdiabaticModel):
    """Model with explicit H_0 and H_T matrices.

    Attributes:
        h0: Operator H_0
        ht: Operator H_T
        instance: Exact Cover instance (EC models only)
    """

    def __init__(
        self,
        spec: ModelSpec,
        h0: FloatArray,
        ht: FloatArray,
        instance: ECInstance | None = None,
        settings: SolverSettings = DEFAULT_SETTINGS,
    ) -> None:
        super().__init__(spec, settings)
        if h0.shape != ht.shape or h0.ndim != 2 or h0.shape[0] != h0.shape[1]:
            raise InvalidSpecError(f"H_0 {h0.shape} and H_T {ht.shape} must be equal square shapes")
        if h0.shape[0] > settings.max_dim:
            raise InvalidInputError(
                f"Dimension {h0.shape[0]} exceeds the cap of {settings.max_dim}"
            )
        self.h0 = h0
        self.ht = ht
        self.instance = instance
        self._spectra: dict[float, Spectrum] = {}

    @property
    def dim(self) -> int:
        return int(self.h0.shape[0])

    def hamiltonian(self, b_eff: float) -> FloatArray:
        """H_s(b_eff) = -b_eff H_0 - J H_T with the model's sign convention."""
        return -b_eff * self.h0 - self.signed_j0 * self.ht

    def spectrum(self, b_eff: float) -> Spectrum:
        """Full spectrum of H_s(b_eff), memoized per field value."""
        key = float(b_eff)
        cached = self._spectra.get(key)
        if cached is None:
            if len(self._spectra) >= _SPECTRUM_CACHE_SIZE:
                self._spectra.clear()
            cached = eigh(self.hamiltonian(key), self.settings)
            self._spectra[key] = cached
        return cached

    def ground_state(self, b_eff: float) -> QuantumState:
        return QuantumState.dense(self.spectrum(b_eff).ground_state)

    def ground_energy(self, b_eff: float) -> float:
        return self.spectrum(b_eff).ground_energy

    def gap(self, b_eff: float) -> float:
        return self.spectrum(b_eff).gap

    def levels(self, b_eff: float, n_levels: int) -> FloatArray:
        return self.spectrum(b_eff).eigenvalues[:n_levels].copy()

    def hamiltonian_scale(self, b_eff: float) -> float:
        return float(np.max(np.abs(self.spectrum(b_eff).eigenvalues)))

    def expectation_h0(self, state: QuantumState) -> float:
        psi = state.amplitudes
        return float(np.vdot(psi, self.h0 @ psi).real)

    def ground_fidelity(self, state: QuantumState, b_eff: float) -> float:
        ground = self.spectrum(b_eff).ground_state
        return float(abs(np.vdot(ground, state.amplitudes)) ** 2)

    def excitation_probability(self, state: QuantumState, b_eff: float) -> float:
        """1 - |<psi_G(b_eff)|psi>|^2.

        Raises:
            DegenerateGroundError: If the instantaneous ground state is degenerate
        """
        if self.is_degenerate(b_eff):
            raise DegenerateGroundError(
                f"Instantaneous ground state is degenerate at B={b_eff:.6g}", b_eff=b_eff
            )
        return min(max(1.0 - self.ground_fidelity(state, b_eff), 0.0), 1.0)

    def x_ss_prime_perturbative(self, b_eff: float) -> float:
        return perturbative_sum(self.spectrum(b_eff), self.h0)

    def schrodinger_rhs(self, amplitudes: ComplexArray, b_eff: float) -> ComplexArray:
        return -1j * (self.hamiltonian(b_eff) @ amplitudes)

    def normalize(self, amplitudes: ComplexArray) -> tuple[ComplexArray, float]:
        norm = float(np.linalg.norm(amplitudes))
        return amplitudes / norm, abs(norm**2 - 1.0)

    def wrap_state(self, amplitudes: ComplexArray) -> QuantumState:
        return QuantumState.dense(amplitudes)


class TLSModel(DenseModel):
    """Two-level system with closed-form X_ss and X'_ss.

    The sigma_x coefficient of H_s is B - B_x/2, so the diabatic splitting
    moves at twice |dB/dt|.
    """

    lz_rate_factor = 2.0

    def x_ss(self, b_eff: float) -> float:
        return tls_xss_analytic(b_eff, self.b_x, self.j0)

    def x_ss_prime_analytic(self, b_eff: float) -> float | None:
        return tls_xss_prime_analytic(b_eff, self.b_x, self.j0)

    def x_limits(self) -> tuple[float, float]:
        return (-1.0, 1.0)


class TFIMDenseModel(DenseModel):
    """Exact TFIM restricted to the even-parity sector.

    Built in the sigma_x eigenbasis (bit set = spin along -x), where the
    parity sector is the set of basis states with an even number of set
    bits. ``gap`` reports half of E_1 - E_0 in the sector, which is the
    single-quasiparticle energy min_k eps_k of the BdG description.

    Attributes:
        sector_states: sigma_x basis indices of the sector, ascending
    """

    def __init__(
        self,
        spec: ModelSpec,
        h0: FloatArray,
        ht: FloatArray,
        sector_states: npt.NDArray[np.int64],
        settings: SolverSettings = DEFAULT_SETTINGS,
    ) -> None:
        super().__init__(spec, h0, ht, settings=settings)
        self.sector_states = sector_states

    def gap(self, b_eff: float) -> float:
        return 0.5 * self.spectrum(b_eff).gap


def build_tls(spec: ModelSpec, settings: SolverSettings = DEFAULT_SETTINGS) -> TLSModel:
    """Two-level model with H_0 = sigma_x and H_T = -B_x sigma_x / (2 J_0) + sigma_z / 2.

    Raises:
        InvalidSpecError: If spec.kind is not TLS
    """
    if spec.kind is not ModelKind.TLS:
        raise InvalidSpecError(f"build_tls needs a TLS spec, got {spec.kind.value}")
    ht = -spec.b_x * SIGMA_X / (2.0 * spec.j0) + SIGMA_Z / 2.0
    return TLSModel(spec, SIGMA_X.copy(), ht, settings=settings)


def transverse_field_operator(n_qubits: int) -> FloatArray:
    """sum_j sigma_x^j in the computational basis (qubit j = bit j)."""
    dim = 2**n_qubits
    h0 = np.zeros((dim, dim))
    states = np.arange(dim)
    for j in range(n_qubits):
        h0[states, states ^ (1 << j)] = 1.0
    return h0


def build_ec(
    instance: ECInstance, spec: ModelSpec, settings: SolverSettings = DEFAULT_SETTINGS
) -> DenseModel:
    """Exact Cover model: H_0 = sum_j sigma_x^j, H_T = diag(number of violated clauses).

    Raises:
        InvalidSpecError: On a wrong kind or a qubit-count mismatch
    """
    if spec.kind is not ModelKind.EC:
        raise InvalidSpecError(f"build_ec needs an EC spec, got {spec.kind.value}")
    if instance.n_qubits != spec.n_qubits:
        raise InvalidSpecError(
            f"Instance has {instance.n_qubits} qubits, spec has {spec.n_qubits}"
        )
    if 2**spec.n_qubits > settings.max_dim:
        raise InvalidInputError(
            f"Dimension 2^{spec.n_qubits} exceeds the cap of {settings.max_dim}"
        )
    ht = np.diag(violation_table(instance.n_qubits, instance.clauses).astype(np.float64))
    return DenseModel(
        spec, transverse_field_operator(spec.n_qubits), ht, instance=instance, settings=settings
    )


def build_tfim_dense(
    spec: ModelSpec, settings: SolverSettings = DEFAULT_SETTINGS
) -> TFIMDenseModel:
    """Periodic TFIM H_s = -B sum sigma_x - J sum sigma_z sigma_z in the even-parity sector.

    Raises:
        InvalidSpecError: If spec.kind is not TFIM
        InvalidInputError: If the sector dimension exceeds the cap
    """
    if spec.kind is not ModelKind.TFIM:
        raise InvalidSpecError(f"build_tfim_dense needs a TFIM spec, got {spec.kind.value}")
    n = spec.n_qubits
    if 2 ** (n - 1) > settings.max_dim:
        raise InvalidInputError(f"Sector dimension 2^{n - 1} exceeds the cap of {settings.max_dim}")

    bits = basis_bits(n)
    popcount = bits.sum(axis=1)
    sector = np.flatnonzero(popcount % 2 == 0).astype(np.int64)
    position = np.full(2**n, -1, dtype=np.int64)
    position[sector] = np.arange(sector.size)

    h0 = np.diag((n - 2 * popcount[sector]).astype(np.float64))
    ht = np.zeros_like(h0)
    rows = np.arange(sector.size)
    for i in range(n):
        flip = (1 << i) | (1 << ((i + 1) % n))
        np.add.at(ht, (rows, position[sector ^ flip]), 1.0)
    return TFIMDenseModel(spec, h0, ht, sector_states=sector, settings=settings)


__all__ = [
    "DenseModel",
    "TLSModel",
    "TFIMDenseModel",
    "build_tls",
    "build_ec",
    "build_tfim_dense",
    "transverse_field_operator",
]
