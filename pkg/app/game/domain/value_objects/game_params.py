"""Game Parameter Value Object.

GameParams holds every model constant of the parallel-queue security game.
"""

import logging

from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)


class GameParams(BaseModel):
    """병렬 큐 보안 게임의 모델 상수를 나타내는 불변 값 객체.

    특징 차원 d = m + 2는 저장하지 않고 항상 m에서 유도합니다.
    """

    model_config = ConfigDict(
        frozen=True, populate_by_name=True, extra="forbid"
    )

    m: int = Field(ge=2, description="서버 수")
    L: int = Field(ge=1, description="서버별 버퍼 크기")
    lam: float = Field(gt=0, alias="lambda", description="포아송 도착률")
    mu: float = Field(gt=0, description="서버별 서비스율")
    c_a: float = Field(ge=0, description="공격 비용률")
    c_b: float = Field(ge=0, description="방어 비용률")
    gamma: float = Field(ge=0, lt=1, description="할인율 (0이면 한 스텝 게임)")

    @model_validator(mode="after")
    def _warn_if_unstable(self) -> "GameParams":
        if self.stability_margin <= 0:
            logger.warning(
                "Arrival rate %.4g is not below total service rate %.4g; "
                "queues will mostly sit at the buffer limit",
                self.lam,
                self.m * self.mu,
            )
        return self

    @property
    def d(self) -> int:
        """특징 함수 개수."""
        return self.m + 2

    @property
    def n_states(self) -> int:
        return (self.L + 1) ** self.m

    @property
    def stability_margin(self) -> float:
        """m·μ − λ. 0 이하이면 불안정."""
        return self.m * self.mu - self.lam

    @property
    def rho_max(self) -> float:
        """순간 보상률의 상한 mL + c_b."""
        return self.m * self.L + self.c_b

    @property
    def reward_bound(self) -> float:
        """한 스텝 기대 보상의 크기 상한 (mL + c_b) / λ."""
        return self.rho_max / self.lam

    @property
    def q_max(self) -> float:
        """행동 가치 함수의 크기 상한 (mL + c_b) / (λ(1 − γ))."""
        return self.rho_max / (self.lam * (1.0 - self.gamma))

    def reward_bounds(self) -> tuple[float, float]:
        """한 스텝 기대 보상의 범위 (−c_a/λ, (mL + c_b)/λ)."""
        return (-self.c_a / self.lam, self.reward_bound)

    def with_gamma(self, gamma: float) -> "GameParams":
        """할인율만 바꾼 새 인스턴스 반환."""
        return GameParams(**{**self.model_dump(), "gamma": gamma})
