"""Routing target and transition distribution value objects."""

import math

from pydantic import BaseModel, Field, computed_field, model_validator

from app.common.exception import DomainError
from app.game.domain.value_objects.state import State


class RouteTarget(BaseModel):
    """도착한 작업의 라우팅 결과.

    servers는 동점 후보 전체(0-based)이며, 거부된 경우 비어 있습니다.
    """

    model_config = {"frozen": True}

    servers: tuple[int, ...] = Field(default=(), description="후보 서버")

    @computed_field
    @property
    def is_rejected(self) -> bool:
        return len(self.servers) == 0

    @classmethod
    def reject(cls) -> "RouteTarget":
        return cls(servers=())


class TransitionDistribution(BaseModel):
    """임베디드 체인의 한 스텝 전이 분포.

    outcomes는 다음 상태 기준으로 정렬되고 병합되어 있습니다.
    """

    model_config = {"frozen": True}

    outcomes: tuple[tuple[State, float], ...]

    @model_validator(mode="after")
    def _check_distribution(self) -> "TransitionDistribution":
        states = [state for state, _ in self.outcomes]
        if len(set(states)) != len(states):
            raise DomainError(message="Next states must be distinct")
        total = 0.0
        for _, probability in self.outcomes:
            if probability < 0.0 or probability > 1.0:
                raise DomainError(
                    message=f"Probability {probability} outside [0, 1]"
                )
            total += probability
        if not math.isclose(total, 1.0, abs_tol=1e-12):
            raise DomainError(
                message=f"Transition probabilities sum to {total}"
            )
        return self

    def as_dict(self) -> dict[State, float]:
        return dict(self.outcomes)

    def probability(self, next_state: State) -> float:
        return self.as_dict().get(tuple(next_state), 0.0)
