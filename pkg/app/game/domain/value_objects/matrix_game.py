"""2x2 zero-sum matrix game solution."""

from pydantic import BaseModel, field_validator

MIX_TOL = 1e-12


class GameSolution(BaseModel):
    """행렬 게임 g[a][b]의 해.

    value는 방어자 기준 minimax 값이며, 각 혼합 전략은
    (p(행동=0), p(행동=1))로 표현됩니다.
    """

    model_config = {"frozen": True}

    value: float
    defender_mix: tuple[float, float]
    attacker_mix: tuple[float, float]

    @field_validator("defender_mix", "attacker_mix")
    @classmethod
    def _check_mix(cls, mix: tuple[float, float]) -> tuple[float, float]:
        if min(mix) < 0.0 or abs(mix[0] + mix[1] - 1.0) > MIX_TOL:
            raise ValueError(f"Invalid mixed strategy: {mix}")
        return mix

    @property
    def defender_is_pure(self) -> bool:
        return min(self.defender_mix) == 0.0

    @property
    def attacker_is_pure(self) -> bool:
        return min(self.attacker_mix) == 0.0
