"""Train Use Case."""

import logging

from app.common.exception import NumericalDivergenceError
from app.game.application.ports import ArtifactRepositoryInterface
from app.game.application.services import (
    ExactSolverService,
    MinimaxLSPITrainer,
)
from app.game.application.use_cases.attacker_factory import build_attacker
from app.game.domain.value_objects import StateSpace, TrainReport
from app.game.infrastructure.persistence.mappers import (
    PolicyMapper,
    TrainReportMapper,
)
from app.game.presentation.cli.schemas import TrainRequest
from config.settings import settings

logger = logging.getLogger(__name__)


class TrainUseCase:
    """Minimax LSPI 학습 유스케이스.

    train_report.json, theta_trace.csv, policy.json을 기록합니다. 평가가
    발산하면 그때까지의 추적 기록을 남긴 뒤 예외를 다시 던집니다.
    """

    def __init__(self, artifact_repository: ArtifactRepositoryInterface):
        self._artifacts = artifact_repository

    def execute(self, request: TrainRequest) -> TrainReport:
        params = request.params
        cap = request.state_space_cap or settings.state_space_cap
        space = StateSpace.enumerate(params, cap)
        attacker = build_attacker(
            request.attacker,
            params,
            space,
            self._artifacts,
            solver=lambda: ExactSolverService(params, cap=cap),
            eps_schedule=(request.eps0, request.eps_decay, request.eps_min),
            eval_tol=request.eval_tol,
            eval_max_iter=request.eval_max_iter,
        )

        try:
            report = MinimaxLSPITrainer(space).train(request, attacker)
        except NumericalDivergenceError as exc:
            if exc.partial_report is not None:
                self._write(exc.partial_report, request, diverged_at=exc.iteration)
            raise

        self._write(report, request)
        return report

    def _write(
        self,
        report: TrainReport,
        request: TrainRequest,
        diverged_at: int | None = None,
    ) -> None:
        payload = TrainReportMapper.to_dict(report, request.params)
        payload["seed"] = request.seed
        payload["attacker"] = request.attacker.model_dump(mode="json")
        payload["diverged_at"] = diverged_at
        self._artifacts.write_json("train_report.json", payload)
        self._artifacts.write_csv(
            "theta_trace.csv",
            TrainReportMapper.csv_header(request.params.d),
            TrainReportMapper.csv_rows(report),
        )
        self._artifacts.write_json(
            "policy.json", PolicyMapper.to_dict(report.beta_final)
        )
