"""Solve Exact Use Case."""

import logging

from app.game.application.ports import ArtifactRepositoryInterface
from app.game.application.services import ExactSolverService
from app.game.domain.value_objects import ShapleySolution
from app.game.infrastructure.persistence.mappers import (
    PolicyMapper,
    QTableMapper,
    SolutionMapper,
)
from app.game.presentation.cli.schemas import SolveExactRequest

logger = logging.getLogger(__name__)


class SolveExactUseCase:
    """Shapley 오라클로 균형(q*, v*, α*, β*)을 구해 저장하는 유스케이스."""

    def __init__(self, artifact_repository: ArtifactRepositoryInterface):
        self._artifacts = artifact_repository

    def execute(self, request: SolveExactRequest) -> ShapleySolution:
        """정확 해 계산 및 저장.

        Raises:
            CapacityExceededError: 상태 공간이 cap을 넘는 경우
            ConvergenceError: max_iter 안에 수렴하지 않은 경우
        """
        solver = ExactSolverService(
            request.params,
            cap=request.state_space_cap,
            tol=request.tol,
            max_iter=request.max_iter,
        )
        solution = solver.shapley_value_iteration()

        self._artifacts.write_json(
            "q_star.json", QTableMapper.to_dict(solution.q_star)
        )
        self._artifacts.write_json(
            "v_star.json", SolutionMapper.v_star_dict(solution)
        )
        self._artifacts.write_json(
            "alpha_star.json", PolicyMapper.to_dict(solution.alpha_star)
        )
        self._artifacts.write_json(
            "beta_star.json", PolicyMapper.to_dict(solution.beta_star)
        )
        self._artifacts.write_json(
            "convergence.json",
            {
                **SolutionMapper.convergence_dict(solution),
                "tol": solver.tol,
                "max_iter": solver.max_iter,
                "params": request.params.model_dump(by_alias=True),
            },
        )
        return solution
