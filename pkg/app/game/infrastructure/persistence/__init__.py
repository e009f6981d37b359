"""Infrastructure Persistence package."""

from .mappers import (
    BoundReportMapper,
    PolicyMapper,
    QTableMapper,
    SampleMapper,
    SolutionMapper,
    TrainReportMapper,
)

__all__ = [
    "PolicyMapper",
    "QTableMapper",
    "SampleMapper",
    "SolutionMapper",
    "TrainReportMapper",
    "BoundReportMapper",
]
