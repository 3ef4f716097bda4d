"""
Artifact Repository

Writes run artifacts (JSON summaries and CSV tables) into an output
directory. Output is deterministic: same content in, same bytes out.
"""

import csv
import io
from pathlib import Path
from typing import Any

from ..exceptions import ReportWriteError
from ..utils.formatting import format_cell
from ..utils.hashing import canonical_json


class ArtifactRepository:
    """Repository for report files under a single output directory"""

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)

    def _write(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8", newline="")
        except OSError as e:
            raise ReportWriteError(f"Cannot write {path}: {e}") from e
        return path

    def write_json(self, name: str, payload: Any) -> Path:
        """Canonical, indented JSON with a trailing newline"""
        return self._write(name, canonical_json(payload, indent=2) + "\n")

    def write_csv(self, name: str, header: list[str], rows: list[list[Any]]) -> Path:
        """CSV with '\\n' line endings and 17-significant-digit floats"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(cell) for cell in row])
        return self._write(name, buffer.getvalue())
