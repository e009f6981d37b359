"""Builds attacker models from their descriptors."""

from typing import Callable

from app.game.application.ports import ArtifactRepositoryInterface
from app.game.application.services import (
    AttackerModel,
    BestResponderAttacker,
    ExactSolverService,
    FixedMixedAttacker,
    MirrorLearnerAttacker,
    RandomUniformAttacker,
)
from app.game.domain.value_objects import (
    AttackerKind,
    AttackerSpec,
    GameParams,
    MixedPolicy,
    Player,
    StateSpace,
)
from app.common.exception import ConfigError


def build_attacker(
    spec: AttackerSpec,
    params: GameParams,
    space: StateSpace,
    artifacts: ArtifactRepositoryInterface,
    solver: Callable[[], ExactSolverService],
    eps_schedule: tuple[float, float, float] = (1.0, 0.999, 0.05),
    eval_tol: float | None = None,
    eval_max_iter: int | None = None,
) -> AttackerModel:
    """공격자 설명자에 맞는 모델 생성.

    Args:
        solver: 정확 해법 서비스를 지연 생성하는 함수 (best_responder 전용)
        eps_schedule: mirror_learner의 (eps0, eps_decay, eps_min)

    Raises:
        ConfigError: 정책 파일이 공격자 정책이 아니거나 상태를 덮지 못하는 경우
    """
    if spec.kind == AttackerKind.RANDOM_UNIFORM:
        return RandomUniformAttacker()
    if spec.kind == AttackerKind.BEST_RESPONDER:
        return BestResponderAttacker(solver())
    if spec.kind == AttackerKind.MIRROR_LEARNER:
        eps0, eps_decay, eps_min = eps_schedule
        return MirrorLearnerAttacker(
            params,
            space,
            eps0=eps0,
            eps_decay=eps_decay,
            eps_min=eps_min,
            eval_tol=eval_tol,
            eval_max_iter=eval_max_iter,
        )

    if spec.policy_path is not None:
        policy = artifacts.load_policy(spec.policy_path)
        if policy.player != Player.ATTACKER:
            raise ConfigError(
                message=f"{spec.policy_path} is not an attacker policy"
            )
        if not policy.covers(space.states):
            raise ConfigError(
                message=f"{spec.policy_path} does not cover every state"
            )
    else:
        policy = MixedPolicy.constant(
            space.states, spec.attack_probability, Player.ATTACKER
        )
    return FixedMixedAttacker(policy)
