"""Dense action-value table over the full state space."""

from dataclasses import dataclass

import numpy as np

from app.common.exception import DomainError
from app.game.domain.value_objects.state import State
from app.game.domain.value_objects.state_space import StateSpace


@dataclass(frozen=True)
class QTable:
    """(상태 인덱스, a, b) → 값의 밀집 테이블.

    values의 shape은 (S, 2, 2)이며 생성 후 읽기 전용입니다.
    """

    space: StateSpace
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.shape != (len(self.space), 2, 2):
            raise DomainError(
                message=(
                    f"Q table shape {values.shape} does not match "
                    f"{len(self.space)} states"
                )
            )
        if not np.all(np.isfinite(values)):
            raise DomainError(message="Q table contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def states(self) -> tuple[State, ...]:
        return self.space.states

    def matrix(self, x: State) -> np.ndarray:
        """상태 x의 2x2 행렬 g[a][b]."""
        return self.values[self.space.index_of(x)]

    def value(self, x: State, a: int, b: int) -> float:
        return float(self.values[self.space.index_of(x), a, b])

    def at_samples(
        self, x_idx: np.ndarray, a: np.ndarray, b: np.ndarray
    ) -> np.ndarray:
        """샘플별 (x, a, b) 위치의 값 벡터."""
        return self.values[x_idx, a, b]
