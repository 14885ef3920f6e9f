"""Domain model for an Exact Cover instance."""

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from ...exceptions import InvalidSpecError
from .spec import Clause

Assignment = tuple[int, ...]


def basis_bits(n_qubits: int) -> npt.NDArray[np.int64]:
    """Bit table of the computational basis, shape (2^n, n).

    Row ``s`` holds (Q_1, ..., Q_n) for basis index ``s``; qubit j is bit j.
    """
    indices = np.arange(2**n_qubits, dtype=np.int64)
    return (indices[:, None] >> np.arange(n_qubits, dtype=np.int64)) & 1


def violation_table(n_qubits: int, clauses: tuple[Clause, ...]) -> npt.NDArray[np.int64]:
    """Number of violated clauses f(Q) for every basis index."""
    bits = basis_bits(n_qubits)
    counts = np.zeros(bits.shape[0], dtype=np.int64)
    for clause in clauses:
        counts += bits[:, list(clause.qubit_indices)].sum(axis=1) != 1
    return counts


def assignment_to_index(assignment: Assignment) -> int:
    """Basis index of an assignment given in Q_1..Q_N order."""
    return sum(bit << j for j, bit in enumerate(assignment))


def index_to_assignment(index: int, n_qubits: int) -> Assignment:
    """Assignment (Q_1..Q_N) of a basis index."""
    return tuple((index >> j) & 1 for j in range(n_qubits))


def assignment_to_string(assignment: Assignment) -> str:
    """Render an assignment as a bit string, Q_1 first (e.g. "100001")."""
    return "".join(str(bit) for bit in assignment)


def string_to_assignment(bits: str) -> Assignment:
    """Parse a Q_1-first bit string such as "100001"."""
    if not bits or any(ch not in "01" for ch in bits):
        raise InvalidSpecError(f"Not a bit string: {bits!r}")
    return tuple(int(ch) for ch in bits)


@dataclass(frozen=True)
class ECInstance:
    """An Exact Cover instance with its brute-force solution set.

    Build instances with ``ECInstance.from_clauses`` so ``solutions`` is
    always consistent with ``clauses``.

    Attributes:
        n_qubits: Number of qubits
        clauses: Clauses in input order
        solutions: Every satisfying assignment, in basis-index order
    """

    n_qubits: int
    clauses: tuple[Clause, ...]
    solutions: tuple[Assignment, ...] = field(default=())

    @classmethod
    def from_clauses(cls, n_qubits: int, clauses: tuple[Clause, ...]) -> "ECInstance":
        """Create an instance and enumerate its solutions over all 2^N assignments.

        Args:
            n_qubits: Number of qubits
            clauses: Clause list

        Returns:
            ECInstance with ``solutions`` filled

        Raises:
            InvalidSpecError: If a clause references a qubit outside the register
        """
        if n_qubits < 3:
            raise InvalidSpecError(f"Exact Cover needs at least 3 qubits, got {n_qubits}")
        for clause in clauses:
            clause.check_range(n_qubits)
        counts = violation_table(n_qubits, clauses)
        solutions = tuple(
            index_to_assignment(int(index), n_qubits) for index in np.flatnonzero(counts == 0)
        )
        return cls(n_qubits=n_qubits, clauses=tuple(clauses), solutions=solutions)

    @property
    def is_satisfiable(self) -> bool:
        """True if at least one assignment satisfies every clause."""
        return len(self.solutions) > 0

    @property
    def has_unique_solution(self) -> bool:
        """True if exactly one assignment satisfies every clause."""
        return len(self.solutions) == 1

    def violation_histogram(self) -> dict[int, int]:
        """Number of basis states per violation count."""
        values, counts = np.unique(violation_table(self.n_qubits, self.clauses), return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts, strict=True)}

    def to_text(self) -> str:
        """Serialize in the instance-file format (1-based indices)."""
        lines = [f"n={self.n_qubits}"]
        lines.extend(" ".join(str(i) for i in clause.one_based()) for clause in self.clauses)
        return "\n".join(lines) + "\n"


__all__ = [
    "Assignment",
    "ECInstance",
    "basis_bits",
    "violation_table",
    "assignment_to_index",
    "index_to_assignment",
    "assignment_to_string",
    "string_to_assignment",
]
