"""Repository Implementations."""

from .artifact_repository import ArtifactRepositoryImpl
from .dataset_repository import DatasetRepositoryImpl

__all__ = [
    "ArtifactRepositoryImpl",
    "DatasetRepositoryImpl",
]
