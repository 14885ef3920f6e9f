"""Tests for Exact Cover parsing, generation and violation counts."""

from pathlib import Path

import pytest

from aqc_cavity.exceptions import (
    ConfigError,
    GenerationFailedError,
    InvalidSpecError,
    ParseError,
)
from aqc_cavity.hamiltonians import (
    count_violations,
    generate_ec_instance,
    load_ec_file,
    parse_ec_clauses,
    solutions,
)
from aqc_cavity.models.domain import Clause
from aqc_cavity.settings import SolverSettings

from .conftest import EC_CLAUSES


class TestParseClauses:
    """Test clause text parsing."""

    def test_parse_reference_instance(self) -> None:
        """Test the six-qubit instance with its unique solution."""
        instance = parse_ec_clauses(EC_CLAUSES)
        assert instance.n_qubits == 6
        assert len(instance.clauses) == 5
        assert instance.clauses[0] == Clause((0, 1, 4))
        assert solutions(instance) == ((1, 0, 0, 0, 0, 1),)

    def test_newlines_and_comments(self) -> None:
        """Test that newlines separate clauses and comments are skipped."""
        text = "# reference\nn=6\n1 2 5; 2 3 6  # first line\n3 4 6\n\n1 3 5; 2 5 6\n"
        instance = parse_ec_clauses(text)
        assert instance.clauses == parse_ec_clauses(EC_CLAUSES).clauses

    def test_header_sets_register(self) -> None:
        """Test that n= widens the register past the largest index."""
        instance = parse_ec_clauses("n=7\n1 2 3")
        assert instance.n_qubits == 7

    def test_n_qubits_argument(self) -> None:
        """Test that the caller's register size applies without a header."""
        assert parse_ec_clauses("1 2 3", n_qubits=5).n_qubits == 5

    def test_empty_input(self) -> None:
        """Test that text without clauses is rejected."""
        with pytest.raises(ParseError, match="No clauses"):
            parse_ec_clauses("# nothing here\n")

    def test_wrong_arity(self) -> None:
        """Test that clauses need exactly three indices."""
        with pytest.raises(ParseError, match="exactly 3") as exc_info:
            parse_ec_clauses("1 2 5; 2 3")
        assert exc_info.value.line == 1
        assert exc_info.value.position == 2

    def test_malformed_token(self) -> None:
        """Test that non-integer tokens are rejected."""
        with pytest.raises(ParseError, match="Malformed"):
            parse_ec_clauses("1 2 x")

    def test_repeated_index(self) -> None:
        """Test that a clause may not repeat a qubit."""
        with pytest.raises(ParseError, match="Repeated"):
            parse_ec_clauses("1 1 2")

    def test_zero_index(self) -> None:
        """Test that indices are 1-based."""
        with pytest.raises(ParseError, match="1-based"):
            parse_ec_clauses("0 1 2")

    def test_out_of_range(self) -> None:
        """Test that indices beyond the header are rejected."""
        with pytest.raises(ParseError, match="out of range") as exc_info:
            parse_ec_clauses("n=4\n1 2 3\n2 3 5")
        assert exc_info.value.line == 3

    def test_duplicate_clause(self) -> None:
        """Test that duplicate clauses are rejected regardless of order."""
        with pytest.raises(ParseError, match="Duplicate"):
            parse_ec_clauses("1 2 3; 3 2 1")

    def test_late_header(self) -> None:
        """Test that the header must come first."""
        with pytest.raises(ParseError, match="precede"):
            parse_ec_clauses("1 2 3\nn=5")

    def test_parse_error_is_value_error(self) -> None:
        """Test that parse errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            parse_ec_clauses("1 2")

    def test_unsatisfiable_instance(self) -> None:
        """Test that every 3-subset of four qubits admits no exact cover."""
        instance = parse_ec_clauses("1 2 3; 1 2 4; 1 3 4; 2 3 4")
        assert instance.is_satisfiable is False
        assert solutions(instance) == ()


class TestLoadFile:
    """Test reading instance files."""

    def test_load_file(self, tmp_path: Path) -> None:
        """Test that a file parses like its text."""
        path = tmp_path / "instance.txt"
        path.write_text("n=6\n" + EC_CLAUSES + "\n", encoding="utf-8")
        assert load_ec_file(path).clauses == parse_ec_clauses(EC_CLAUSES).clauses

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing file is a configuration error."""
        with pytest.raises(ConfigError, match="Cannot read"):
            load_ec_file(tmp_path / "missing.txt")

    def test_text_round_trip(self) -> None:
        """Test that to_text output parses back to the same clauses."""
        instance = parse_ec_clauses(EC_CLAUSES)
        assert parse_ec_clauses(instance.to_text()).clauses == instance.clauses


class TestGenerate:
    """Test random instance generation."""

    def test_deterministic(self) -> None:
        """Test that a seed fixes the instance."""
        first = generate_ec_instance(6, 5, seed=7)
        second = generate_ec_instance(6, 5, seed=7)
        assert first.clauses == second.clauses

    def test_distinct_clauses(self) -> None:
        """Test that generated clauses are pairwise distinct."""
        instance = generate_ec_instance(8, 20, seed=3)
        keys = {clause.key() for clause in instance.clauses}
        assert len(keys) == 20

    def test_unique_solution(self) -> None:
        """Test rejection sampling down to one satisfying assignment."""
        instance = generate_ec_instance(6, 5, seed=11, require_unique=True)
        assert instance.has_unique_solution is True
        assert count_violations(instance, instance.solutions[0]) == 0

    def test_progress_callback(self) -> None:
        """Test that generation reports through the callback."""
        messages: list[str] = []
        generate_ec_instance(6, 5, seed=1, on_progress=messages.append)
        assert messages and "attempt" in messages[-1]

    def test_too_many_clauses(self) -> None:
        """Test that more clauses than 3-subsets cannot be drawn."""
        with pytest.raises(GenerationFailedError, match="distinct clauses"):
            generate_ec_instance(4, 5, seed=0)

    def test_exhausted_budget(self) -> None:
        """Test that an impossible uniqueness demand exhausts the budget."""
        # C(3, 3) = 1: the only clause leaves three solutions
        with pytest.raises(GenerationFailedError, match="attempts"):
            generate_ec_instance(
                3, 1, seed=0, require_unique=True, settings=SolverSettings(ec_attempts=5)
            )

    def test_invalid_sizes(self) -> None:
        """Test argument validation."""
        with pytest.raises(InvalidSpecError):
            generate_ec_instance(2, 1, seed=0)
        with pytest.raises(InvalidSpecError):
            generate_ec_instance(6, 0, seed=0)


class TestCountViolations:
    """Test violation counting."""

    def test_counts(self) -> None:
        """Test counts for the solution and its single flips."""
        instance = parse_ec_clauses(EC_CLAUSES)
        assert count_violations(instance, (1, 0, 0, 0, 0, 1)) == 0
        assert count_violations(instance, (0, 0, 0, 0, 0, 1)) == 2
        assert count_violations(instance, (1, 0, 0, 1, 0, 1)) == 1

    def test_length_mismatch(self) -> None:
        """Test that assignments must cover the register."""
        instance = parse_ec_clauses(EC_CLAUSES)
        with pytest.raises(InvalidSpecError):
            count_violations(instance, (1, 0, 0))
