"""
Scaling Engine Utilities

Canonical JSON, configuration hashing and deterministic number formatting.
"""

from .formatting import format_cell, format_decimal, format_float
from .hashing import canonical_json, generate_config_hash

__all__ = [
    "canonical_json",
    "generate_config_hash",
    "format_cell",
    "format_decimal",
    "format_float",
]
