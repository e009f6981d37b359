"""Application Services - evaluation, oracle, bound and training logic."""

from app.game.application.services.attacker_models import (
    AttackerModel,
    BestResponderAttacker,
    FixedMixedAttacker,
    MirrorLearnerAttacker,
    RandomUniformAttacker,
    epsilon_greedy,
    exploration_rate,
)
from app.game.application.services.error_bound_service import (
    ErrorBoundService,
    NearOptimality,
    PointwiseCheck,
)
from app.game.application.services.minimax_lspi_trainer import (
    MinimaxLSPITrainer,
    collect,
    collect_exhaustive,
    evaluate_policy_rollout,
    improve_policy,
    rollout_horizon,
)
from app.game.application.services.policy_evaluation_service import (
    PolicyEvaluationService,
    SuccessorValues,
)
from app.game.application.services.shapley_solver import ExactSolverService

__all__ = [
    "ExactSolverService",
    "PolicyEvaluationService",
    "SuccessorValues",
    "ErrorBoundService",
    "PointwiseCheck",
    "NearOptimality",
    "AttackerModel",
    "FixedMixedAttacker",
    "RandomUniformAttacker",
    "BestResponderAttacker",
    "MirrorLearnerAttacker",
    "epsilon_greedy",
    "exploration_rate",
    "MinimaxLSPITrainer",
    "improve_policy",
    "collect",
    "collect_exhaustive",
    "rollout_horizon",
    "evaluate_policy_rollout",
]
