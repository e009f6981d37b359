"""Infrastructure - file repositories and record mappers."""

from .persistence.mappers import (
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
