"""Exact Cover instances: parsing, random generation and violation counts.

Instance text format:
    # comment lines (and trailing comments) are ignored
    n=6
    1 2 5; 2 3 6
    3 4 6
    1 3 5; 2 5 6

Clauses are triples of 1-based qubit indices, separated by semicolons or
newlines. The optional ``n=<qubits>`` header must be the first non-comment
line; without it the register size is the caller's ``n_qubits`` or the
largest index used.
"""

import logging
import math
from collections.abc import Callable
from pathlib import Path

import numpy as np

from ..exceptions import ConfigError, GenerationFailedError, InvalidSpecError, ParseError
from ..models.domain.instance import Assignment, ECInstance
from ..models.domain.spec import Clause
from ..settings import DEFAULT_SETTINGS, SolverSettings

logger = logging.getLogger(__name__)


def _parse_header(line: str, line_no: int) -> int:
    value = line.split("=", 1)[1].strip()
    try:
        n_qubits = int(value)
    except ValueError as e:
        raise ParseError(f"Malformed qubit count {value!r}", line=line_no) from e
    if n_qubits < 3:
        raise ParseError(f"Qubit count must be at least 3, got {n_qubits}", line=line_no)
    return n_qubits


def _parse_clause(chunk: str, line_no: int, position: int) -> tuple[int, int, int]:
    tokens = chunk.replace(",", " ").split()
    if len(tokens) != 3:
        raise ParseError(
            f"Clause {chunk.strip()!r} needs exactly 3 indices", line=line_no, position=position
        )
    try:
        indices = tuple(int(token) for token in tokens)
    except ValueError as e:
        raise ParseError(
            f"Malformed index in clause {chunk.strip()!r}", line=line_no, position=position
        ) from e
    if len(set(indices)) != 3:
        raise ParseError(
            f"Repeated index in clause {chunk.strip()!r}", line=line_no, position=position
        )
    if min(indices) < 1:
        raise ParseError(
            f"Indices are 1-based, got {chunk.strip()!r}", line=line_no, position=position
        )
    return (indices[0], indices[1], indices[2])


def parse_ec_clauses(text: str, n_qubits: int | None = None) -> ECInstance:
    """Parse clause text into an ECInstance with its solutions.

    Args:
        text: Clause list, e.g. "1 2 5; 2 3 6; 3 4 6; 1 3 5; 2 5 6"
        n_qubits: Register size; overrides the largest index but not a header

    Returns:
        ECInstance with clauses in input order

    Raises:
        ParseError: Malformed token, repeated or out-of-range index, duplicate
            clause, or empty input
    """
    header_n: int | None = None
    parsed: list[tuple[tuple[int, int, int], int, int]] = []
    seen_content = False

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("n="):
            if seen_content:
                raise ParseError("The n= header must precede all clauses", line=line_no)
            header_n = _parse_header(line, line_no)
            seen_content = True
            continue
        seen_content = True
        chunks = [chunk for chunk in line.split(";") if chunk.strip()]
        for position, chunk in enumerate(chunks, start=1):
            parsed.append((_parse_clause(chunk, line_no, position), line_no, position))

    if not parsed:
        raise ParseError("No clauses found")

    largest = max(max(indices) for indices, _, _ in parsed)
    size = header_n if header_n is not None else (n_qubits if n_qubits is not None else largest)

    clauses: list[Clause] = []
    keys: set[frozenset[int]] = set()
    for indices, line_no, position in parsed:
        if max(indices) > size:
            raise ParseError(
                f"Index {max(indices)} out of range for n={size}", line=line_no, position=position
            )
        clause = Clause((indices[0] - 1, indices[1] - 1, indices[2] - 1))
        if clause.key() in keys:
            raise ParseError(
                f"Duplicate clause {' '.join(map(str, indices))}", line=line_no, position=position
            )
        keys.add(clause.key())
        clauses.append(clause)

    try:
        return ECInstance.from_clauses(size, tuple(clauses))
    except InvalidSpecError as e:
        raise ParseError(e.message) from e


def load_ec_file(path: Path, n_qubits: int | None = None) -> ECInstance:
    """Read and parse an instance file.

    Raises:
        ConfigError: If the file does not exist or cannot be read
        ParseError: If its contents are malformed
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read instance file {path}: {e}") from e
    return parse_ec_clauses(text, n_qubits=n_qubits)


def _sample_clauses(rng: np.random.Generator, n_qubits: int, n_clauses: int) -> tuple[Clause, ...]:
    clauses: list[Clause] = []
    keys: set[frozenset[int]] = set()
    while len(clauses) < n_clauses:
        picked = sorted(int(i) for i in rng.choice(n_qubits, size=3, replace=False))
        clause = Clause((picked[0], picked[1], picked[2]))
        if clause.key() in keys:
            continue
        keys.add(clause.key())
        clauses.append(clause)
    return tuple(clauses)


def generate_ec_instance(
    n_qubits: int,
    n_clauses: int,
    seed: int,
    require_unique: bool = False,
    settings: SolverSettings = DEFAULT_SETTINGS,
    on_progress: Callable[[str], None] | None = None,
) -> ECInstance:
    """Generate a random Exact Cover instance.

    Each clause is a uniformly drawn 3-subset; duplicates are redrawn. With
    ``require_unique`` whole instances are redrawn until exactly one
    assignment satisfies them.

    Args:
        n_qubits: Register size (>= 3)
        n_clauses: Number of distinct clauses (>= 1)
        seed: Generator seed; identical inputs give identical instances
        require_unique: Reject instances without a unique solution
        settings: Supplies the rejection budget ``ec_attempts``
        on_progress: Optional callback for progress updates

    Returns:
        ECInstance

    Raises:
        InvalidSpecError: If n_qubits < 3 or n_clauses < 1
        GenerationFailedError: If the clause count exceeds C(n, 3) or the
            rejection budget is exhausted
    """
    if n_qubits < 3:
        raise InvalidSpecError(f"Exact Cover needs at least 3 qubits, got {n_qubits}")
    if n_clauses < 1:
        raise InvalidSpecError(f"Need at least one clause, got {n_clauses}")
    available = math.comb(n_qubits, 3)
    if n_clauses > available:
        raise GenerationFailedError(
            f"Only {available} distinct clauses exist for n={n_qubits}, requested {n_clauses}"
        )

    rng = np.random.default_rng(seed)
    attempts = settings.ec_attempts if require_unique else 1
    for attempt in range(1, attempts + 1):
        instance = ECInstance.from_clauses(n_qubits, _sample_clauses(rng, n_qubits, n_clauses))
        if not require_unique or instance.has_unique_solution:
            logger.debug("EC instance accepted after %d attempt(s)", attempt)
            if on_progress:
                on_progress(f"Generated EC instance after {attempt} attempt(s)")
            return instance
        if on_progress and attempt % 10_000 == 0:
            on_progress(f"{attempt} EC instances rejected so far...")

    raise GenerationFailedError(
        f"No unique-solution instance with n={n_qubits}, m={n_clauses} "
        f"in {settings.ec_attempts} attempts"
    )


def count_violations(instance: ECInstance, assignment: Assignment) -> int:
    """Number of clauses whose three bits do not sum to exactly 1.

    Raises:
        InvalidSpecError: If the assignment length differs from n_qubits
    """
    if len(assignment) != instance.n_qubits:
        raise InvalidSpecError(
            f"Assignment has {len(assignment)} bits, instance has {instance.n_qubits} qubits"
        )
    return sum(1 for clause in instance.clauses if not clause.is_satisfied(assignment))


def solutions(instance: ECInstance) -> tuple[Assignment, ...]:
    """All satisfying assignments (brute force, basis-index order)."""
    return instance.solutions


__all__ = [
    "parse_ec_clauses",
    "load_ec_file",
    "generate_ec_instance",
    "count_violations",
    "solutions",
]
