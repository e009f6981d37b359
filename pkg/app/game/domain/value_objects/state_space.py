"""Enumerated state space {0..L}^m."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from app.common.exception import CapacityExceededError, DomainError
from app.game.domain.value_objects.game_params import GameParams
from app.game.domain.value_objects.state import State


@dataclass(frozen=True)
class StateSpace:
    """사전식 순서로 나열한 전체 상태 공간과 인덱스 맵."""

    m: int
    L: int
    states: tuple[State, ...]
    _index: dict[State, int] = field(repr=False, compare=False)

    @classmethod
    def enumerate(cls, params: GameParams, cap: int) -> "StateSpace":
        """{0..L}^m을 사전식으로 나열한다.

        Raises:
            CapacityExceededError: (L+1)^m이 cap을 넘는 경우
        """
        size = params.n_states
        if size > cap:
            raise CapacityExceededError(
                message=(
                    f"State space of size {size} exceeds the cap of {cap} "
                    f"(m={params.m}, L={params.L})"
                ),
                extra={"n_states": size, "cap": cap},
            )
        states = tuple(
            itertools.product(range(params.L + 1), repeat=params.m)
        )
        return cls(
            m=params.m,
            L=params.L,
            states=states,
            _index={x: i for i, x in enumerate(states)},
        )

    def __len__(self) -> int:
        return len(self.states)

    def index_of(self, x: State) -> int:
        try:
            return self._index[tuple(x)]
        except KeyError as exc:
            raise DomainError(
                message=f"State {tuple(x)} is not in the state space"
            ) from exc

    def indices_of(self, xs: np.ndarray) -> np.ndarray:
        """(n, m) 상태 배열을 인덱스 배열로 변환 (사전식 순서의 L+1 진법)."""
        xs = np.asarray(xs, dtype=np.int64)
        weights = (self.L + 1) ** np.arange(self.m - 1, -1, -1)
        return xs @ weights

    def as_array(self) -> np.ndarray:
        return np.array(self.states, dtype=np.int64).reshape(-1, self.m)
