"""Exception hierarchy for the ancilla-cavity adiabaticity toolkit."""


class AqcCavityError(Exception):
    """Base exception for all aqc-cavity errors.

    Subclasses additionally inherit the closest builtin exception so callers
    can catch either hierarchy.
    """

    def __init__(self, message: str) -> None:
        """Initialize the error.

        Args:
            message: Human-readable error message
        """
        super().__init__(message)
        self.message = message


class InvalidSpecError(AqcCavityError, ValueError):
    """Raised when a model description violates its invariants.

    Covers wrong model kinds, dimension mismatches and odd TFIM chains.
    """

    pass


class ParseError(AqcCavityError, ValueError):
    """Raised when clause text or an instance file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, position: int | None = None) -> None:
        """Initialize parse error.

        Args:
            message: Error message
            line: 1-based line number of the offending token, if known
            position: 1-based clause position within the line, if known
        """
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", clause {position})" if position else ")")
        super().__init__(f"{message}{location}")
        self.line = line
        self.position = position


class GenerationFailedError(AqcCavityError):
    """Raised when random Exact Cover generation exhausts its attempt budget."""

    pass


class InvalidInputError(AqcCavityError, ValueError):
    """Raised for numerically invalid arguments (asymmetric matrix, oversize)."""

    pass


class DegenerateGroundError(AqcCavityError):
    """Raised when an operation requires a nondegenerate ground state."""

    def __init__(self, message: str, b_eff: float | None = None) -> None:
        super().__init__(message)
        self.b_eff = b_eff


class EmptyResultError(AqcCavityError):
    """Raised when an analytical search finds nothing in its bracket.

    Not fatal for sweeps: rows carry the condition instead of raising.
    """

    pass


class ZeroDetuningError(AqcCavityError, ZeroDivisionError):
    """Raised when the cavity constant alpha is requested at zero detuning."""

    pass


class IntegrationError(AqcCavityError):
    """Raised when time integration produces non-finite values."""

    def __init__(self, message: str, last_time: float) -> None:
        """Initialize integration error.

        Args:
            message: Error message
            last_time: Last simulation time with a finite state
        """
        super().__init__(f"{message} (last valid t={last_time:.6g})")
        self.last_time = last_time


class ConfigError(AqcCavityError, ValueError):
    """Raised when a run configuration document is invalid."""

    pass


class OutputPathError(AqcCavityError, ValueError):
    """Raised when an output filename escapes its output directory."""

    pass


__all__ = [
    "AqcCavityError",
    "InvalidSpecError",
    "ParseError",
    "GenerationFailedError",
    "InvalidInputError",
    "DegenerateGroundError",
    "EmptyResultError",
    "ZeroDetuningError",
    "IntegrationError",
    "ConfigError",
    "OutputPathError",
]
