"""Attacker model kind value object."""

from enum import Enum


class AttackerKind(str, Enum):
    """학습 중 공격자 행동을 생성하는 모델 종류.

    str을 상속하여 JSON 설정 파일에서 그대로 사용할 수 있습니다.
    """

    FIXED_MIXED = "fixed_mixed"
    BEST_RESPONDER = "best_responder"
    MIRROR_LEARNER = "mirror_learner"
    RANDOM_UNIFORM = "random_uniform"

    @property
    def needs_oracle(self) -> bool:
        """전체 상태 공간 열거(정확 해법)가 필요한 모델인지."""
        return self == AttackerKind.BEST_RESPONDER
