"""Domain Services - pure game rules and linear-algebra primitives."""

from .feature_service import FeatureService
from .matrix_game_service import MatrixGameService
from .queue_dynamics_service import QueueDynamicsService

__all__ = [
    "QueueDynamicsService",
    "MatrixGameService",
    "FeatureService",
]
