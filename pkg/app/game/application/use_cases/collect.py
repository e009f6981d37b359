"""Collect Use Case."""

import logging

from app.common.exception import ConfigError
from app.common.utils.rng import make_rng
from app.game.application.ports import (
    ArtifactRepositoryInterface,
    DatasetRepositoryInterface,
)
from app.game.application.services import (
    ExactSolverService,
    collect,
    collect_exhaustive,
)
from app.game.application.services.minimax_lspi_trainer import (
    COLLECTION_STREAM,
    EXHAUSTIVE_STREAM,
)
from app.game.application.use_cases.attacker_factory import build_attacker
from app.game.domain.entities import Dataset
from app.game.domain.value_objects import MixedPolicy, Player, StateSpace
from app.game.presentation.cli.schemas import CollectRequest
from config.settings import settings

logger = logging.getLogger(__name__)


class CollectUseCase:
    """bound 명령용 데이터셋 생성 유스케이스 (trajectory | exhaustive)."""

    def __init__(
        self,
        artifact_repository: ArtifactRepositoryInterface,
        dataset_repository: DatasetRepositoryInterface,
    ):
        self._artifacts = artifact_repository
        self._datasets = dataset_repository

    def execute(self, request: CollectRequest) -> Dataset:
        params = request.params
        cap = request.state_space_cap or settings.state_space_cap
        space = StateSpace.enumerate(params, cap)

        if request.design == "exhaustive":
            ds = collect_exhaustive(
                params,
                space,
                request.visits_per_triple,
                make_rng(request.seed, EXHAUSTIVE_STREAM),
            )
        else:
            beta = self._defender_policy(request, space)
            attacker = build_attacker(
                request.attacker,
                params,
                space,
                self._artifacts,
                solver=lambda: ExactSolverService(params, cap=cap),
                eps_schedule=(request.eps0, request.eps_decay, request.eps_min),
            )
            attacker.begin_iteration(beta)
            ds, _ = collect(
                beta,
                attacker,
                request.n,
                (request.eps0, request.eps_decay, request.eps_min),
                params,
                make_rng(request.seed, COLLECTION_STREAM),
                request.initial_state,
            )

        path = self._datasets.save(
            ds, self._artifacts.out_dir / request.output_name
        )
        logger.info(
            "Collected %d samples (%s design) into %s",
            ds.n,
            request.design,
            path,
        )
        return ds

    def _defender_policy(
        self, request: CollectRequest, space: StateSpace
    ) -> MixedPolicy:
        if request.policy_path is None:
            return MixedPolicy.uniform(space.states, Player.DEFENDER)
        policy = self._artifacts.load_policy(request.policy_path)
        if policy.player != Player.DEFENDER:
            raise ConfigError(
                message=f"{request.policy_path} is not a defender policy"
            )
        if not policy.covers(space.states):
            raise ConfigError(
                message=f"{request.policy_path} does not cover every state"
            )
        return policy
