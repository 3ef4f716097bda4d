"""
Input Repository

Reads scenario inputs from disk:
- Sampled arrays from CSV files with a header row
- Numeral lists from UTF-8 text files, one numeral per line
"""

from pathlib import Path

import numpy as np

from ..exceptions import InputPreparationError


class InputRepository:
    """
    Repository for file-based scenario inputs.

    Relative paths resolve against base_dir (the config file's directory).
    """

    def __init__(self, base_dir: Path | None = None):
        self.base_dir = Path(base_dir) if base_dir is not None else Path.cwd()

    def resolve(self, path: Path) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    # =========================================================================
    # SAMPLED ARRAYS
    # =========================================================================

    def read_columns(self, path: Path, columns: list[str]) -> dict[str, np.ndarray]:
        """
        Read named float columns from a CSV file.

        Args:
            path: CSV file with a header row
            columns: Column names that must be present

        Returns:
            Mapping of column name to 1D float array, in file row order

        Raises:
            InputPreparationError: If the file is missing, malformed or
                lacks a required column
        """
        resolved = self.resolve(path)
        try:
            table = np.genfromtxt(
                resolved,
                delimiter=",",
                names=True,
                dtype=float,
                encoding="utf-8",
                ndmin=1,
            )
        except (OSError, ValueError) as e:
            raise InputPreparationError(f"Cannot read samples from {resolved}: {e}") from e

        available = table.dtype.names or ()
        missing = [column for column in columns if column not in available]
        if missing:
            raise InputPreparationError(
                f"{resolved} is missing column(s) {', '.join(missing)}; found {', '.join(available)}"
            )

        result = {column: np.asarray(table[column], dtype=float) for column in columns}
        for column, values in result.items():
            if not np.all(np.isfinite(values)):
                raise InputPreparationError(f"{resolved}: column {column} has non-finite entries")
        return result

    # =========================================================================
    # NUMERALS
    # =========================================================================

    def read_numerals(self, path: Path) -> list[str]:
        """Non-blank lines of a UTF-8 text file, stripped"""
        resolved = self.resolve(path)
        try:
            text = resolved.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise InputPreparationError(f"Cannot read numerals from {resolved}: {e}") from e
        return [line.strip() for line in text.splitlines() if line.strip()]
