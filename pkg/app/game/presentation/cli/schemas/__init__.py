"""CLI Schemas - experiment documents."""

from .request import (
    BoundRequest,
    CollectRequest,
    EvaluateRequest,
    ExperimentRequest,
    SolveExactRequest,
    TrainRequest,
    experiment_adapter,
)

__all__ = [
    "SolveExactRequest",
    "TrainRequest",
    "EvaluateRequest",
    "BoundRequest",
    "CollectRequest",
    "ExperimentRequest",
    "experiment_adapter",
]
