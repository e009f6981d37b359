"""Training configuration value objects."""

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from app.common.utils.rng import SEED_MAX
from app.game.domain.value_objects.attacker_kind import AttackerKind
from app.game.domain.value_objects.game_params import GameParams
from app.game.domain.value_objects.initial_state import (
    InitialStateDistribution,
)


class AttackerSpec(BaseModel):
    """공격자 모델 설명자.

    fixed_mixed는 attack_probability(모든 상태 공통) 또는 policy_path 중
    하나가 필요합니다.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    kind: AttackerKind = AttackerKind.RANDOM_UNIFORM
    attack_probability: Optional[float] = Field(default=None, ge=0, le=1)
    policy_path: Optional[str] = None

    @model_validator(mode="after")
    def _fixed_needs_policy(self) -> "AttackerSpec":
        if self.kind == AttackerKind.FIXED_MIXED and (
            (self.attack_probability is None) == (self.policy_path is None)
        ):
            raise ValueError(
                "fixed_mixed attacker needs exactly one of "
                "'attack_probability' or 'policy_path'"
            )
        return self


class TrainConfig(BaseModel):
    """Minimax LSPI 학습 입력."""

    model_config = {"frozen": True, "extra": "forbid"}

    params: GameParams
    n: int = Field(description="반복당 샘플 수 (d보다 커야 함)")
    eps0: float = Field(default=1.0, ge=0, le=1)
    eps_min: float = Field(default=0.05, ge=0, le=1)
    eps_decay: float = Field(default=0.999, gt=0, le=1)
    theta_tol: float = Field(default=1e-3, gt=0)
    max_outer_iters: int = Field(default=20, ge=1)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    attacker: AttackerSpec = Field(default_factory=AttackerSpec)
    initial_state: InitialStateDistribution = Field(
        default_factory=InitialStateDistribution
    )
    eval_tol: float = Field(default=1e-8, gt=0)
    eval_max_iter: int = Field(default=500, ge=1)
    explore_attacker: bool = Field(
        default=True,
        description="수집 중 공격자의 실현 행동에도 같은 ε-탐욕 규칙 적용",
    )
    reset_exploration: bool = Field(
        default=True, description="외부 반복마다 ε 스케줄을 eps0부터 다시 시작"
    )

    @model_validator(mode="after")
    def _check_schedule(self) -> "TrainConfig":
        if self.n <= self.params.d:
            raise ValueError(
                f"n must exceed the feature dimension d={self.params.d}"
            )
        if self.eps_min > self.eps0:
            raise ValueError("eps_min must not exceed eps0")
        return self
