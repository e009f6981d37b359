"""Game Domain Entities."""

from .dataset import Dataset, Sample, Triple

__all__ = [
    "Sample",
    "Dataset",
    "Triple",
]
