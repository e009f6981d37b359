"""Experiment documents - Pydantic models for CLI command configs.

Every document is a JSON object with a top-level "command" discriminator.
Unknown keys are rejected at every level before any computation runs.
"""

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter, model_validator

from app.common.utils.rng import SEED_MAX
from app.game.domain.value_objects import (
    AttackerSpec,
    GameParams,
    InitialStateDistribution,
    TrainConfig,
)
from config.settings import settings


class SolveExactRequest(BaseModel):
    """solve-exact 명령 문서."""

    model_config = {"frozen": True, "extra": "forbid"}

    command: Literal["solve-exact"]
    params: GameParams
    state_space_cap: Optional[int] = Field(None, ge=1)
    tol: Optional[float] = Field(None, gt=0)
    max_iter: Optional[int] = Field(None, ge=1)
    seed: int = Field(0, ge=0, le=SEED_MAX)


class TrainRequest(TrainConfig):
    """train 명령 문서 (TrainConfig + command)."""

    command: Literal["train"]
    state_space_cap: Optional[int] = Field(None, ge=1)


class EvaluateRequest(BaseModel):
    """evaluate 명령 문서."""

    model_config = {"frozen": True, "extra": "forbid"}

    command: Literal["evaluate"]
    params: GameParams
    policy_path: str = Field(..., min_length=1)
    attacker: AttackerSpec = Field(default_factory=AttackerSpec)
    n_rollouts: int = Field(..., ge=2)
    truncation_error: float = Field(1e-3, gt=0)
    horizon: Optional[int] = Field(
        None, ge=1, description="지정하면 truncation_error 대신 사용"
    )
    initial_state: InitialStateDistribution = Field(
        default_factory=InitialStateDistribution
    )
    oracle: bool = Field(True, description="가능하면 정확 해법으로 비교")
    state_space_cap: Optional[int] = Field(None, ge=1)
    seed: int = Field(0, ge=0, le=SEED_MAX)


class BoundRequest(BaseModel):
    """bound 명령 문서."""

    model_config = {"frozen": True, "extra": "forbid"}

    command: Literal["bound"]
    params: GameParams
    dataset_path: str = Field(..., min_length=1)
    policy_path: Optional[str] = Field(
        None, description="평가할 방어자 정책 (없으면 정확 균형 정책 β*)"
    )
    delta: float = Field(settings.default_delta, gt=0, lt=1)
    eval_tol: float = Field(1e-8, gt=0)
    eval_max_iter: int = Field(500, ge=1)
    state_space_cap: Optional[int] = Field(None, ge=1)
    seed: int = Field(0, ge=0, le=SEED_MAX)


class CollectRequest(BaseModel):
    """collect 명령 문서.

    trajectory 설계는 n 스텝 궤적 하나를, exhaustive 설계는 모든 (x, a, b)를
    visits_per_triple번씩 생성 모델에서 샘플링합니다.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    command: Literal["collect"]
    params: GameParams
    design: Literal["trajectory", "exhaustive"] = "trajectory"
    n: Optional[int] = Field(None, ge=1)
    visits_per_triple: Optional[int] = Field(None, ge=1)
    policy_path: Optional[str] = None
    attacker: AttackerSpec = Field(default_factory=AttackerSpec)
    eps0: float = Field(1.0, ge=0, le=1)
    eps_min: float = Field(0.05, ge=0, le=1)
    eps_decay: float = Field(0.999, gt=0, le=1)
    initial_state: InitialStateDistribution = Field(
        default_factory=InitialStateDistribution
    )
    output_name: str = Field("dataset.ndjson", min_length=1)
    state_space_cap: Optional[int] = Field(None, ge=1)
    seed: int = Field(0, ge=0, le=SEED_MAX)

    @model_validator(mode="after")
    def _check_design(self) -> "CollectRequest":
        if self.design == "trajectory" and self.n is None:
            raise ValueError("trajectory design needs 'n'")
        if self.design == "exhaustive" and self.visits_per_triple is None:
            raise ValueError("exhaustive design needs 'visits_per_triple'")
        return self


ExperimentRequest = Annotated[
    Union[
        SolveExactRequest,
        TrainRequest,
        EvaluateRequest,
        BoundRequest,
        CollectRequest,
    ],
    Field(discriminator="command"),
]

experiment_adapter: TypeAdapter = TypeAdapter(ExperimentRequest)
