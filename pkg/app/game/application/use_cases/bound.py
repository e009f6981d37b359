"""Bound Use Case."""

import logging

from app.common.exception import ConfigError
from app.game.application.ports import (
    ArtifactRepositoryInterface,
    DatasetRepositoryInterface,
)
from app.game.application.services import (
    ErrorBoundService,
    ExactSolverService,
    PolicyEvaluationService,
)
from app.game.domain.value_objects import BoundReport, Player
from app.game.infrastructure.persistence.mappers import (
    BoundReportMapper,
    to_builtin,
)
from app.game.presentation.cli.schemas import BoundRequest

logger = logging.getLogger(__name__)


class BoundUseCase:
    """저장된 데이터셋 위에서 오차 상한을 계산하는 유스케이스.

    β는 정책 파일(없으면 정확 균형 정책 β*)이고, 참 Q는 정확 해법의
    best_response_q(β)입니다. 상한 항목과 함께 측정 오차 ‖Q − Φθ‖_σ,
    분해 부등식, 점별 Bellman 격차 검사, 보상 격차 위반 비율을 기록합니다.
    """

    def __init__(
        self,
        artifact_repository: ArtifactRepositoryInterface,
        dataset_repository: DatasetRepositoryInterface,
    ):
        self._artifacts = artifact_repository
        self._datasets = dataset_repository

    def execute(self, request: BoundRequest) -> BoundReport:
        """Raises:
        DatasetMismatchError: 데이터셋 상태/행동이 params와 맞지 않는 경우
        DegenerateFeaturesError: Gram 행렬이 수치적으로 0인 경우
        """
        params = request.params
        ds = self._datasets.load(request.dataset_path)
        ds.validate_against(params)

        solver = ExactSolverService(params, cap=request.state_space_cap)
        if request.policy_path is None:
            beta = solver.shapley_value_iteration().beta_star
        else:
            beta = self._artifacts.load_policy(request.policy_path)
            if beta.player != Player.DEFENDER:
                raise ConfigError(
                    message=f"{request.policy_path} is not a defender policy"
                )
            if not beta.covers(solver.states):
                raise ConfigError(
                    message=f"{request.policy_path} does not cover every state"
                )

        result = PolicyEvaluationService.evaluate_policy(
            ds,
            beta,
            params,
            tol=request.eval_tol,
            max_iter=request.eval_max_iter,
        )
        q_true = solver.best_response_q(beta)
        q_on_samples = q_true.at_samples(
            q_true.space.indices_of(ds.xs), ds.a, ds.b
        )
        phi = PolicyEvaluationService.features_of(ds)
        kernel = PolicyEvaluationService.empirical_transitions(ds, params)

        report = ErrorBoundService.evaluation_bound(
            ds, phi, params, request.delta, q_on_samples, kernel
        )
        measured = ErrorBoundService.measured_error(
            q_on_samples, phi, result.theta
        )
        lhs, rhs = ErrorBoundService.decomposition_check(
            ds, phi, beta, result.theta, params, q_true, kernel
        )
        pointwise = ErrorBoundService.pointwise_gap_check(
            ds,
            result.theta,
            beta,
            params,
            report.c_p_hat,
            request.delta,
            kernel,
        )
        reward_gap = ErrorBoundService.reward_gap_violation_rate(ds, params)
        logger.info(
            "Measured error %.4g vs bound %.4g", measured, report.total
        )

        self._artifacts.write_json(
            "bound_report.json",
            {
                **BoundReportMapper.to_dict(report),
                "measured_error": measured,
                "bound_holds": measured <= report.total,
                "theta": to_builtin(result.theta),
                "evaluation": {
                    "converged": result.converged,
                    "iterations": result.iterations,
                    "td_error": result.td_error,
                },
                "decomposition": {
                    "lhs": lhs,
                    "rhs": rhs,
                    "holds": lhs <= rhs,
                },
                "pointwise_gap": pointwise.model_dump(),
                "reward_gap_violation_rate": reward_gap,
                "dataset_path": request.dataset_path,
                "policy_path": request.policy_path,
                "params": params.model_dump(by_alias=True),
            },
        )
        return report
