"""Declarative model descriptions: ModelSpec and Exact Cover clauses."""

from dataclasses import dataclass
from enum import Enum

from ...exceptions import InvalidSpecError


class ModelKind(str, Enum):
    """The three adiabatic model families."""

    TLS = "TLS"
    EC = "EC"
    TFIM = "TFIM"


@dataclass(frozen=True)
class Clause:
    """One Exact Cover clause over three distinct qubits (0-based indices).

    Satisfied when exactly one of the three bits is 1.
    """

    qubit_indices: tuple[int, int, int]

    def __post_init__(self) -> None:
        if len(self.qubit_indices) != 3:
            raise InvalidSpecError(f"Clause needs exactly 3 qubits, got {self.qubit_indices}")
        if len(set(self.qubit_indices)) != 3:
            raise InvalidSpecError(f"Clause qubits must be distinct: {self.qubit_indices}")
        if min(self.qubit_indices) < 0:
            raise InvalidSpecError(f"Clause qubit indices must be >= 0: {self.qubit_indices}")

    def check_range(self, n_qubits: int) -> None:
        """Raise InvalidSpecError if any index is outside [0, n_qubits)."""
        if max(self.qubit_indices) >= n_qubits:
            raise InvalidSpecError(
                f"Clause {self.one_based()} references a qubit beyond n_qubits={n_qubits}"
            )

    def is_satisfied(self, assignment: tuple[int, ...]) -> bool:
        """Check the clause against a bit assignment (Q_1..Q_N order)."""
        return sum(assignment[i] for i in self.qubit_indices) == 1

    def one_based(self) -> tuple[int, int, int]:
        """Indices in the 1-based convention used by instance files."""
        i, j, k = self.qubit_indices
        return (i + 1, j + 1, k + 1)

    def key(self) -> frozenset[int]:
        """Index set, for duplicate detection irrespective of order."""
        return frozenset(self.qubit_indices)


@dataclass(frozen=True)
class ModelSpec:
    """Description of one adiabatic model H_s(B) = -B H_0 - J_0 H_T.

    ``j0`` stores the magnitude |J_0|; each model family applies its own sign
    convention when assembling H_s.

    Attributes:
        kind: Model family
        b_x: Transverse-field magnitude B_x (> 0)
        j0: Magnitude of the H_T coefficient (> 0)
        n_qubits: Number of qubits (1 for TLS, even for TFIM)
        clauses: Exact Cover clauses (EC only)
        seed: Generator seed for a random EC instance (EC only)
        n_clauses: Clause count for a generated EC instance
    """

    kind: ModelKind
    b_x: float
    j0: float
    n_qubits: int = 1
    clauses: tuple[Clause, ...] | None = None
    seed: int | None = None
    n_clauses: int | None = None

    def __post_init__(self) -> None:
        if not self.b_x > 0:
            raise InvalidSpecError(f"b_x must be positive, got {self.b_x}")
        if not self.j0 > 0:
            raise InvalidSpecError(f"j0 must be positive (magnitude convention), got {self.j0}")
        if self.n_qubits < 1:
            raise InvalidSpecError(f"n_qubits must be positive, got {self.n_qubits}")

        if self.kind is ModelKind.TLS and self.n_qubits != 1:
            raise InvalidSpecError("A TLS model has exactly one qubit")
        if self.kind is ModelKind.EC:
            if self.clauses is None and self.seed is None:
                raise InvalidSpecError("An EC model needs clauses or a generator seed")
            for clause in self.clauses or ():
                clause.check_range(self.n_qubits)
        if self.kind is ModelKind.TFIM and self.n_qubits % 2 != 0:
            raise InvalidSpecError(f"TFIM needs an even qubit count, got {self.n_qubits}")


__all__ = ["ModelKind", "Clause", "ModelSpec"]
