"""Game Domain Value Objects."""

from .attacker_kind import AttackerKind
from .empirical_kernel import EmpiricalKernel
from .game_params import GameParams
from .initial_state import InitialStateDistribution, InitialStateKind
from .joint_action import (
    ALL_JOINT_ACTIONS,
    JointAction,
    Player,
    all_joint_actions,
)
from .matrix_game import GameSolution
from .mixed_policy import MixedPolicy
from .q_table import QTable
from .reports import (
    BestResponse,
    BoundReport,
    EvaluationResult,
    IterationDiagnostics,
    ShapleySolution,
    TrainReport,
)
from .state import State, parse_state_key, state_key, validate_state
from .state_space import StateSpace
from .train_config import AttackerSpec, TrainConfig
from .transition import RouteTarget, TransitionDistribution

__all__ = [
    "GameParams",
    "State",
    "StateSpace",
    "validate_state",
    "state_key",
    "parse_state_key",
    "JointAction",
    "Player",
    "ALL_JOINT_ACTIONS",
    "all_joint_actions",
    "RouteTarget",
    "TransitionDistribution",
    "GameSolution",
    "MixedPolicy",
    "QTable",
    "AttackerKind",
    "EmpiricalKernel",
    "InitialStateDistribution",
    "InitialStateKind",
    "EvaluationResult",
    "ShapleySolution",
    "BestResponse",
    "BoundReport",
    "IterationDiagnostics",
    "TrainReport",
    "TrainConfig",
    "AttackerSpec",
]
