"""
Hashing Utilities

Canonical JSON encoding and digests used to fingerprint run configurations
and to keep report files byte-identical across reruns.
"""

import hashlib
import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np


def json_serial(obj: Any) -> Any:
    """
    JSON serializer for objects not serializable by default json code.

    Handles:
    - Path objects (converts to POSIX string)
    - Enum members (converts to value)
    - Fraction objects (converts to "p/q" string, exact)
    - numpy scalars and arrays (converts to Python numbers / lists)

    Raises:
        TypeError: If type is not serializable
    """
    if isinstance(obj, Path):
        return obj.as_posix()
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"Type {type(obj)} not serializable")


def normalize_for_json(obj: Any) -> Any:
    """
    Recursively normalize data structures for canonical JSON.

    Ensures:
    - Tuples and sets become lists (sets sorted)
    - Non-finite floats become the strings "nan", "inf", "-inf"
    - Nested dictionaries are normalized recursively
    """
    if isinstance(obj, dict):
        return {str(key): normalize_for_json(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize_for_json(item) for item in obj]
    if isinstance(obj, set):
        return sorted(normalize_for_json(item) for item in obj)
    if isinstance(obj, (float, np.floating)) and not math.isfinite(obj):
        return str(float(obj))
    return obj


def canonical_json(payload: Any, indent: int | None = None) -> str:
    """JSON text with sorted keys; identical payloads give identical text"""
    return json.dumps(
        normalize_for_json(payload),
        sort_keys=True,
        indent=indent,
        default=json_serial,
        allow_nan=False,
    )


def generate_config_hash(payload: dict[str, Any]) -> str:
    """SHA256 of the canonical JSON form of a configuration mapping"""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()
