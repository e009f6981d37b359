"""Game Use Cases - one per CLI command."""

from .attacker_factory import build_attacker
from .bound import BoundUseCase
from .collect import CollectUseCase
from .evaluate import EvaluateUseCase
from .solve_exact import SolveExactUseCase
from .train import TrainUseCase

__all__ = [
    "SolveExactUseCase",
    "TrainUseCase",
    "EvaluateUseCase",
    "BoundUseCase",
    "CollectUseCase",
    "build_attacker",
]
