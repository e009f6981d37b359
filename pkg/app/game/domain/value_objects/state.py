"""Queue-occupancy states.

A state is a length-m tuple of job counts, one per server, each in [0, L].
"""

from app.common.exception import DomainError
from app.game.domain.value_objects.game_params import GameParams

State = tuple[int, ...]


def validate_state(x: State, params: GameParams) -> State:
    """상태 벡터가 {0..L}^m 안에 있는지 검증하고 튜플로 정규화한다.

    Raises:
        DomainError: 길이나 성분이 범위를 벗어난 경우
    """
    state = tuple(int(v) for v in x)
    if len(state) != params.m:
        raise DomainError(
            message=f"State {state} must have {params.m} components"
        )
    for value in state:
        if value < 0 or value > params.L:
            raise DomainError(
                message=f"State {state} has a component outside [0, {params.L}]"
            )
    return state


def state_key(x: State) -> str:
    """직렬화용 키 "i,j,..."."""
    return ",".join(str(v) for v in x)


def parse_state_key(key: str) -> State:
    try:
        return tuple(int(part) for part in key.split(","))
    except ValueError as exc:
        raise DomainError(message=f"Malformed state key: {key!r}") from exc
