"""Evaluate Use Case."""

import logging

import numpy as np

from app.common.exception import ConfigError
from app.game.application.ports import ArtifactRepositoryInterface
from app.game.application.services import (
    ExactSolverService,
    FixedMixedAttacker,
    evaluate_policy_rollout,
    rollout_horizon,
)
from app.game.application.use_cases.attacker_factory import build_attacker
from app.game.domain.value_objects import (
    InitialStateDistribution,
    InitialStateKind,
    MixedPolicy,
    Player,
    StateSpace,
)
from app.game.presentation.cli.schemas import EvaluateRequest
from config.settings import settings

logger = logging.getLogger(__name__)


def _initial_average(
    v: np.ndarray, space: StateSpace, x0_dist: InitialStateDistribution
) -> float:
    """초기 분포에 대한 상태 가치의 기댓값."""
    if x0_dist.kind == InitialStateKind.UNIFORM:
        return float(np.mean(v))
    if x0_dist.kind == InitialStateKind.POINT:
        return float(v[space.index_of(tuple(x0_dist.state))])
    return float(v[space.index_of((0,) * space.m)])


class EvaluateUseCase:
    """저장된 방어자 정책의 평가 유스케이스.

    몬테카를로 롤아웃으로 할인 비용의 평균과 표준오차를 구하고, oracle이
    켜져 있으면 정확 해법으로 exploitability를 함께 기록합니다. 공격자가
    fixed_mixed이면 같은 초기 분포에서의 정확한 정책 쌍 가치도 남깁니다.
    """

    def __init__(self, artifact_repository: ArtifactRepositoryInterface):
        self._artifacts = artifact_repository

    def execute(self, request: EvaluateRequest) -> dict:
        """Raises:
        ConfigError: 정책 파일이 없거나 잘못된 경우
        CapacityExceededError: 상태 공간이 cap을 넘는 경우
        """
        params = request.params
        cap = request.state_space_cap or settings.state_space_cap
        space = StateSpace.enumerate(params, cap)

        beta = self._load_defender_policy(request.policy_path, space)
        solver: ExactSolverService | None = None

        def make_solver() -> ExactSolverService:
            nonlocal solver
            if solver is None:
                solver = ExactSolverService(params, cap=cap)
            return solver

        attacker = build_attacker(
            request.attacker, params, space, self._artifacts, make_solver
        )
        horizon = request.horizon or rollout_horizon(
            params, request.truncation_error
        )
        mean, stderr = evaluate_policy_rollout(
            beta,
            attacker,
            horizon,
            request.n_rollouts,
            params,
            request.seed,
            request.initial_state,
        )
        logger.info(
            "Rollout evaluation: mean=%.6g stderr=%.3g (H=%d, %d rollouts)",
            mean,
            stderr,
            horizon,
            request.n_rollouts,
        )

        result = {
            "mean_discounted_cost": mean,
            "standard_error": stderr,
            "horizon": horizon,
            "n_rollouts": request.n_rollouts,
            "seed": request.seed,
            "policy_path": request.policy_path,
            "attacker": request.attacker.model_dump(mode="json"),
            "initial_state": request.initial_state.model_dump(mode="json"),
            "params": params.model_dump(by_alias=True),
            "exploitability": None,
            "exact_value": None,
        }

        if isinstance(attacker, FixedMixedAttacker):
            q = make_solver().policy_value(attacker.policy, beta)
            v = np.einsum(
                "sa,sb,sab->s",
                attacker.policy.as_array(space.states),
                beta.as_array(space.states),
                q.values,
            )
            result["exact_value"] = _initial_average(
                v, space, request.initial_state
            )

        if request.oracle:
            solution = make_solver().shapley_value_iteration()
            result["exploitability"] = make_solver().exploitability(
                beta, solution.v_star
            )
            logger.info("Exploitability: %.3e", result["exploitability"])

        self._artifacts.write_json("evaluation.json", result)
        return result

    def _load_defender_policy(
        self, path: str, space: StateSpace
    ) -> MixedPolicy:
        policy = self._artifacts.load_policy(path)
        if policy.player != Player.DEFENDER:
            raise ConfigError(message=f"{path} is not a defender policy")
        if not policy.covers(space.states):
            raise ConfigError(message=f"{path} does not cover every state")
        return policy
