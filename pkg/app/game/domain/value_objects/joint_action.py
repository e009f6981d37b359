from enum import Enum

from pydantic import BaseModel, Field


class Player(str, Enum):
    """게임 참여자."""

    ATTACKER = "attacker"
    DEFENDER = "defender"


class JointAction(BaseModel):
    """공격자 행동 a와 방어자 행동 b의 쌍."""

    model_config = {"frozen": True}

    a: int = Field(ge=0, le=1, description="공격 여부")
    b: int = Field(ge=0, le=1, description="방어 여부")

    @property
    def attack_succeeds(self) -> bool:
        """공격했고 방어하지 않은 경우에만 라우팅이 조작된다."""
        return self.a == 1 and self.b == 0


ALL_JOINT_ACTIONS: tuple[JointAction, ...] = tuple(
    JointAction(a=a, b=b) for a in (0, 1) for b in (0, 1)
)


def all_joint_actions() -> tuple[JointAction, ...]:
    """(0,0), (0,1), (1,0), (1,1) 순서의 네 가지 행동 쌍."""
    return ALL_JOINT_ACTIONS
