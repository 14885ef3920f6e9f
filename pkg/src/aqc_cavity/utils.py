"""Output utilities: safe output paths and fixed-precision number formatting."""

import math
import re
from pathlib import Path
from typing import Any

from .exceptions import OutputPathError

SIGNIFICANT_DIGITS = 12
FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"

_UNSAFE_CHARS = re.compile(r"[^A-Za-z0-9._-]")


def sanitize_filename(filename: str) -> str:
    """Replace characters outside ``[A-Za-z0-9._-]`` with underscores."""
    return _UNSAFE_CHARS.sub("_", filename)


def safe_output_path(base_dir: Path, filename: str) -> Path:
    """Create an output path that cannot escape the output directory.

    Args:
        base_dir: Run output directory
        filename: Requested filename (may come from a config document)

    Returns:
        Sanitized, resolved path within base_dir

    Raises:
        OutputPathError: If path traversal is detected

    Example:
        >>> safe_output_path(Path("/runs/tls"), "protocol_0003.json")
        PosixPath('/runs/tls/protocol_0003.json')
        >>> safe_output_path(Path("/runs/tls"), "../sweep.csv")  # Raises OutputPathError
    """
    if ".." in filename or filename.startswith("/"):
        raise OutputPathError(
            f"Path traversal detected: {filename} resolves outside output directory"
        )

    full_path = (base_dir / sanitize_filename(filename)).resolve()
    try:
        full_path.relative_to(base_dir.resolve())
    except ValueError as e:
        raise OutputPathError(
            f"Path traversal detected: {filename} resolves outside output directory"
        ) from e
    return full_path


def round_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round a float to ``digits`` significant digits (non-finite values pass through)."""
    if not math.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.{digits}g}")


def rounded(obj: Any) -> Any:
    """Recursively round every float in a JSON-like structure."""
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {key: rounded(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(val) for val in obj]
    return obj


__all__ = ["safe_output_path", "sanitize_filename", "round_sig", "rounded", "FLOAT_FORMAT"]
