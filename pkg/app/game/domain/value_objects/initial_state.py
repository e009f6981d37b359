"""Initial state distribution of a trajectory."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, model_validator

from app.game.domain.value_objects.game_params import GameParams
from app.game.domain.value_objects.state import State, validate_state


class InitialStateKind(str, Enum):
    EMPTY = "empty"
    POINT = "point"
    UNIFORM = "uniform"


class InitialStateDistribution(BaseModel):
    """궤적 시작 상태 x₀의 분포.

    기본값은 빈 시스템(모든 큐가 0)에 대한 점질량입니다.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    kind: InitialStateKind = InitialStateKind.EMPTY
    state: Optional[State] = None

    @model_validator(mode="after")
    def _point_needs_state(self) -> "InitialStateDistribution":
        if self.kind == InitialStateKind.POINT and self.state is None:
            raise ValueError("a point initial distribution needs 'state'")
        return self

    def sample(self, params: GameParams, rng: np.random.Generator) -> State:
        if self.kind == InitialStateKind.EMPTY:
            return (0,) * params.m
        if self.kind == InitialStateKind.POINT:
            return validate_state(self.state, params)
        return tuple(
            int(v) for v in rng.integers(0, params.L + 1, size=params.m)
        )
