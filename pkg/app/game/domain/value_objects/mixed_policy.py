"""Mixed Policy Value Object."""

import numpy as np
from pydantic import BaseModel, field_validator

from app.common.exception import DomainError
from app.game.domain.value_objects.joint_action import Player
from app.game.domain.value_objects.state import State

PROBABILITY_TOL = 1e-9


class MixedPolicy(BaseModel):
    """상태별 {0, 1} 위의 확률 분포.

    한 플레이어(공격자 또는 방어자)의 정상(stationary) 마르코프 정책입니다.
    각 분포는 (p(행동=0), p(행동=1)) 쌍으로 저장됩니다.
    """

    model_config = {"frozen": True}

    player: Player
    probs: dict[State, tuple[float, float]]

    @field_validator("probs")
    @classmethod
    def _check_distributions(
        cls, probs: dict[State, tuple[float, float]]
    ) -> dict[State, tuple[float, float]]:
        for state, (p0, p1) in probs.items():
            if p0 < -PROBABILITY_TOL or p1 < -PROBABILITY_TOL:
                raise DomainError(
                    message=f"Negative probability at state {state}"
                )
            if abs(p0 + p1 - 1.0) > PROBABILITY_TOL:
                raise DomainError(
                    message=f"Probabilities at state {state} sum to {p0 + p1}"
                )
        return probs

    # === Constructors ===

    @classmethod
    def pure(
        cls, states: tuple[State, ...], action: int, player: Player
    ) -> "MixedPolicy":
        """모든 상태에서 같은 순수 행동을 고르는 정책."""
        mix = (1.0, 0.0) if action == 0 else (0.0, 1.0)
        return cls(player=player, probs={x: mix for x in states})

    @classmethod
    def uniform(
        cls, states: tuple[State, ...], player: Player
    ) -> "MixedPolicy":
        return cls(player=player, probs={x: (0.5, 0.5) for x in states})

    @classmethod
    def constant(
        cls,
        states: tuple[State, ...],
        p1: float,
        player: Player,
    ) -> "MixedPolicy":
        """행동 1의 확률이 모든 상태에서 p1인 정책."""
        return cls(player=player, probs={x: (1.0 - p1, p1) for x in states})

    @classmethod
    def from_array(
        cls,
        states: tuple[State, ...],
        mixes: np.ndarray,
        player: Player,
    ) -> "MixedPolicy":
        """(S, 2) 배열에서 정책 생성."""
        return cls(
            player=player,
            probs={
                x: (float(mixes[i, 0]), float(mixes[i, 1]))
                for i, x in enumerate(states)
            },
        )

    # === Queries ===

    def at(self, x: State) -> tuple[float, float]:
        try:
            return self.probs[tuple(x)]
        except KeyError as exc:
            raise DomainError(
                message=f"Policy is not defined at state {tuple(x)}"
            ) from exc

    def prob(self, x: State, action: int) -> float:
        return self.at(x)[action]

    def covers(self, states: tuple[State, ...]) -> bool:
        return all(tuple(x) in self.probs for x in states)

    def as_array(self, states: tuple[State, ...]) -> np.ndarray:
        """주어진 상태 순서대로 (S, 2) 배열 반환."""
        return np.array([self.at(x) for x in states], dtype=float)

    def is_pure(self, x: State) -> bool:
        p0, p1 = self.at(x)
        return min(p0, p1) <= PROBABILITY_TOL
