"""Time-evolution state and result types."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt

from ...exceptions import InvalidSpecError
from .schedule import ControlKind

ComplexArray = npt.NDArray[np.complex128]
FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class QuantumState:
    """Qubit state as a dense amplitude vector or as BdG mode pairs.

    Dense states have shape (dim,). BdG states have shape (n_modes, 2) with
    columns (U_k, V_k): the amplitudes of the empty and doubly occupied
    (+k, -k) pair states.
    """

    amplitudes: ComplexArray
    bdg: bool = False

    def __post_init__(self) -> None:
        expected_ndim = 2 if self.bdg else 1
        if self.amplitudes.ndim != expected_ndim:
            raise InvalidSpecError(
                f"{'BdG' if self.bdg else 'Dense'} state needs a {expected_ndim}-d array, "
                f"got shape {self.amplitudes.shape}"
            )
        if self.bdg and self.amplitudes.shape[1] != 2:
            raise InvalidSpecError(f"BdG state needs (n_modes, 2), got {self.amplitudes.shape}")

    @classmethod
    def dense(cls, vector: npt.ArrayLike) -> "QuantumState":
        return cls(np.asarray(vector, dtype=np.complex128))

    @classmethod
    def modes(cls, pairs: npt.ArrayLike) -> "QuantumState":
        return cls(np.asarray(pairs, dtype=np.complex128), bdg=True)

    def flat(self) -> ComplexArray:
        """Amplitudes as one flat vector (integration layout)."""
        return self.amplitudes.reshape(-1)

    def with_flat(self, vector: ComplexArray) -> "QuantumState":
        """A state of the same kind built from a flat vector."""
        return QuantumState(vector.reshape(self.amplitudes.shape).copy(), bdg=self.bdg)

    def norm_defect(self) -> float:
        """Largest deviation of the (per-mode) norm from 1."""
        if self.bdg:
            norms = np.sum(np.abs(self.amplitudes) ** 2, axis=1)
            return float(np.max(np.abs(norms - 1.0)))
        return float(abs(np.vdot(self.amplitudes, self.amplitudes).real - 1.0))


@dataclass(frozen=True)
class CavityAmplitude:
    """Mean cavity field <a> split into quadratures."""

    a_re: float
    a_im: float

    @classmethod
    def from_complex(cls, value: complex) -> "CavityAmplitude":
        return cls(float(value.real), float(value.imag))

    @property
    def value(self) -> complex:
        return complex(self.a_re, self.a_im)

    @property
    def x_a(self) -> float:
        """Displacement <a + a^dagger> = 2 Re<a>."""
        return 2.0 * self.a_re


class Termination(str, Enum):
    """How an integration ended."""

    SETTLED = "settled"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Trajectory:
    """Sampled time series of a coupled run.

    Attributes:
        t: Sample times (strictly increasing)
        a_re: Re<a>
        a_im: Im<a>
        x_a: 2 Re<a>
        x_op: <H_0> of the qubit state
        b_eff: B_x - g x_a
        p_exc: Excitation probability against the instantaneous ground state
        switch_time: Time of the switch to the final control value, if it fired
        terminated: Settled or timeout
        max_norm_defect: Largest norm defect seen before renormalization
        final_state: Qubit state at the last sample
        final_amplitude: Cavity amplitude at the last sample
    """

    t: FloatArray
    a_re: FloatArray
    a_im: FloatArray
    x_a: FloatArray
    x_op: FloatArray
    b_eff: FloatArray
    p_exc: FloatArray
    switch_time: float | None
    terminated: Termination
    max_norm_defect: float
    final_state: QuantumState
    final_amplitude: CavityAmplitude

    def __len__(self) -> int:
        return int(self.t.size)

    def to_columns(self) -> dict[str, FloatArray]:
        """Columns for trajectory.csv, in output order."""
        return {
            "t": self.t,
            "a_re": self.a_re,
            "a_im": self.a_im,
            "x_a": self.x_a,
            "X": self.x_op,
            "b_eff": self.b_eff,
            "p_exc": self.p_exc,
        }


@dataclass(frozen=True)
class ProtocolResult:
    """Outcome of one switching-protocol run and its linear-ramp baseline.

    Attributes:
        control_value: eps_mid (or Delta_mid for detuning control)
        trajectory: Sampled coupled trajectory
        lambda_c: |dB_eff/dt| at the gap crossing, 0 without crossing
        n_c: Excitation at the end of the run; a probability for dense models,
            the excited pair-mode count sum_k |beta_k|^2 in [0, N/2] for BdG models
        lz_prediction: Landau-Zener estimate from lambda_c
        lambda_l: Linear-ramp rate |B(T) - B(0)| / t_s
        n_l: Excitation of the linear ramp, same measure as n_c
        b_final: Effective field at the end of the run
        t_s: First time B_eff is within settle_tol B_x of b_final
        lz_mode_product: 1 - prod_k (1 - p_k) from per-mode LZ (TFIM only)
        control_kind: Which control was switched
        extras: Diagnostics; p_any_c and p_any_l hold 1 - ground fidelity in [0, 1]
    """

    control_value: float
    trajectory: Trajectory
    lambda_c: float
    n_c: float
    lz_prediction: float
    lambda_l: float
    n_l: float
    b_final: float
    t_s: float
    lz_mode_product: float | None = None
    control_kind: ControlKind = ControlKind.EPSILON
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def crossed(self) -> bool:
        return self.lambda_c > 0.0

    @property
    def control_key(self) -> str:
        return "eps_mid" if self.control_kind is ControlKind.EPSILON else "delta_mid"

    def to_dict(self) -> dict[str, Any]:
        """Record for protocol.json."""
        record: dict[str, Any] = {
            self.control_key: self.control_value,
            "lambda_c": self.lambda_c,
            "n_c": self.n_c,
            "lz_prediction": self.lz_prediction,
            "lambda_l": self.lambda_l,
            "n_l": self.n_l,
            "b_final": self.b_final,
            "t_s": self.t_s,
            "terminated": self.trajectory.terminated.value,
            "switch_time": self.trajectory.switch_time,
            "max_norm_defect": self.trajectory.max_norm_defect,
        }
        if self.lz_mode_product is not None:
            record["lz_mode_product"] = self.lz_mode_product
        record.update(self.extras)
        return record

    def summary_row(self) -> dict[str, float]:
        """Row for the protocol summary table."""
        return {
            self.control_key: self.control_value,
            "lambda_c": self.lambda_c,
            "n_c": self.n_c,
            "lz_prediction": self.lz_prediction,
            "lambda_l": self.lambda_l,
            "n_l": self.n_l,
            "b_final": self.b_final,
            "t_s": self.t_s,
        }


__all__ = [
    "QuantumState",
    "CavityAmplitude",
    "Termination",
    "Trajectory",
    "ProtocolResult",
]
