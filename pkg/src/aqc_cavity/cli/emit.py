"""Ordered writer for run outputs (CSV and JSON)."""

import json
import logging
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..exceptions import OutputPathError
from ..utils import FLOAT_FORMAT, rounded, safe_output_path

logger = logging.getLogger(__name__)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(key): _jsonable(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(val) for val in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


class Emitter:
    """Writes every output of one run into its output directory.

    All files go through one emitter so their content does not depend on
    how the work was scheduled. Written names are remembered for the
    manifest.

    Args:
        output_dir: Directory receiving the files (created if missing)

    Raises:
        OutputPathError: If the directory cannot be created
    """

    def __init__(self, output_dir: Path) -> None:
        try:
            output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputPathError(f"Cannot create output directory {output_dir}: {e}") from e
        self.output_dir = output_dir
        self.written: list[str] = []

    def _path(self, filename: str) -> Path:
        return safe_output_path(self.output_dir, filename)

    def write_csv(
        self,
        filename: str,
        rows: Iterable[Mapping[str, Any]] | pd.DataFrame,
        columns: list[str] | None = None,
    ) -> Path:
        """Write rows as RFC-4180 CSV with 12 significant digits."""
        if isinstance(rows, pd.DataFrame):
            frame = rows
        else:
            frame = pd.DataFrame(list(rows), columns=columns)
        path = self._path(filename)
        frame.to_csv(
            path,
            index=False,
            float_format=FLOAT_FORMAT,
            lineterminator="\r\n",
            encoding="utf-8",
        )
        return self._done(path)

    def write_json(self, filename: str, payload: Any) -> Path:
        """Write a JSON document with floats rounded to 12 significant digits."""
        path = self._path(filename)
        text = json.dumps(_jsonable(rounded(payload)), indent=2, ensure_ascii=False)
        path.write_text(text + "\n", encoding="utf-8")
        return self._done(path)

    def write_text(self, filename: str, text: str) -> Path:
        path = self._path(filename)
        path.write_text(text, encoding="utf-8")
        return self._done(path)

    def write_manifest(self, status: str, error: str | None = None) -> Path:
        """Record the written files and the run status (manifest.json)."""
        payload: dict[str, Any] = {"status": status, "files": list(self.written)}
        if error is not None:
            payload["error"] = error
        return self.write_json("manifest.json", payload)

    def _done(self, path: Path) -> Path:
        if path.name not in self.written:
            self.written.append(path.name)
        logger.debug("Wrote %s", path)
        return path


__all__ = ["Emitter"]
