"""
Repository layer for reading scenario inputs and writing report files.
"""

from .artifact_repository import ArtifactRepository
from .input_repository import InputRepository

__all__ = [
    "ArtifactRepository",
    "InputRepository",
]
