"""Attacker models for closed-loop training and rollouts.

The defender only ever sees the attacker's realized actions; these models
decide how those actions are generated in experiments.
"""

import logging
from abc import ABC, abstractmethod

import numpy as np

from app.common.exception import DomainError
from app.game.application.services.policy_evaluation_service import (
    PolicyEvaluationService,
)
from app.game.application.services.shapley_solver import ExactSolverService
from app.game.domain.entities import Dataset
from app.game.domain.services import FeatureService, MatrixGameService
from app.game.domain.value_objects import (
    GameParams,
    MixedPolicy,
    Player,
    State,
    StateSpace,
)

logger = logging.getLogger(__name__)


def exploration_rate(
    t: int, eps0: float, eps_decay: float, eps_min: float
) -> float:
    """ε_t = max(eps_min, eps0·eps_decay^t)."""
    return max(eps_min, eps0 * eps_decay**t)


def epsilon_greedy(
    mix: tuple[float, float], eps: float, rng: np.random.Generator
) -> int:
    """확률 eps로 {0, 1}에서 균등 선택, 그 외에는 mix에서 샘플링."""
    if not 0.0 <= eps <= 1.0:
        raise DomainError(message=f"eps must lie in [0, 1]: {eps}")
    if rng.random() < eps:
        return int(rng.integers(2))
    return int(rng.random() < mix[1])


class AttackerModel(ABC):
    """공격자 모델 인터페이스.

    외부 반복마다 begin_iteration(β) → act(x, rng)* → end_iteration(ds) 순으로
    호출됩니다.
    """

    def begin_iteration(self, beta: MixedPolicy) -> None:
        """방어자가 이번 반복에 사용할 정책을 공표한다."""

    @abstractmethod
    def act(self, x: State, rng: np.random.Generator) -> int:
        pass

    def end_iteration(self, ds: Dataset) -> None:
        """이번 반복에서 수집된 데이터셋을 전달한다."""


class FixedMixedAttacker(AttackerModel):
    """고정된 혼합 정책 α를 따르는 공격자."""

    def __init__(self, policy: MixedPolicy):
        self.policy = policy

    def act(self, x: State, rng: np.random.Generator) -> int:
        return int(rng.random() < self.policy.prob(x, 1))


class RandomUniformAttacker(AttackerModel):
    def act(self, x: State, rng: np.random.Generator) -> int:
        return int(rng.integers(2))


class BestResponderAttacker(AttackerModel):
    """공표된 β에 대한 최적 대응을 매 반복 다시 계산하는 공격자."""

    def __init__(self, solver: ExactSolverService):
        self._solver = solver
        self.policy = MixedPolicy.pure(solver.states, 0, Player.ATTACKER)

    def begin_iteration(self, beta: MixedPolicy) -> None:
        self.policy = self._solver.best_response_value(beta).policy

    def act(self, x: State, rng: np.random.Generator) -> int:
        return int(rng.random() < self.policy.prob(x, 1))


class MirrorLearnerAttacker(AttackerModel):
    """자기 쪽 Minimax LSPI를 대칭으로 수행하는 공격자.

    자신의 정책 α를 고정한 채 방어자가 최소화한다고 가정하여 평가하고,
    상태별 행렬 게임의 maximin 혼합 전략으로 개선합니다.
    """

    def __init__(
        self,
        params: GameParams,
        space: StateSpace,
        eps0: float,
        eps_decay: float,
        eps_min: float,
        eval_tol: float | None = None,
        eval_max_iter: int | None = None,
    ):
        self.params = params
        self.space = space
        self.eps0 = eps0
        self.eps_decay = eps_decay
        self.eps_min = eps_min
        self.eval_tol = eval_tol
        self.eval_max_iter = eval_max_iter
        self.theta = np.zeros(params.d)
        self.policy = self._improve(self.theta)
        self._t = 0

    def _improve(self, theta: np.ndarray) -> MixedPolicy:
        q = FeatureService.q_matrices(self.space.as_array(), theta)
        _, _, attacker = MatrixGameService.solve_defender_batch(q)
        return MixedPolicy.from_array(
            self.space.states, attacker, Player.ATTACKER
        )

    def act(self, x: State, rng: np.random.Generator) -> int:
        eps = exploration_rate(
            self._t, self.eps0, self.eps_decay, self.eps_min
        )
        self._t += 1
        return epsilon_greedy(self.policy.at(x), eps, rng)

    def end_iteration(self, ds: Dataset) -> None:
        result = PolicyEvaluationService.evaluate_policy(
            ds,
            self.policy,
            self.params,
            tol=self.eval_tol,
            max_iter=self.eval_max_iter,
            theta0=self.theta,
        )
        self.theta = result.theta
        self.policy = self._improve(self.theta)
        logger.debug("Mirror attacker updated, theta=%s", self.theta)
