"""Result and report value objects.

Numeric results that carry numpy arrays are frozen dataclasses; the reports
that are serialized as-is are frozen pydantic models.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from app.game.domain.value_objects.mixed_policy import MixedPolicy
from app.game.domain.value_objects.q_table import QTable


@dataclass(frozen=True)
class EvaluationResult:
    """정책 평가 결과."""

    theta: np.ndarray
    converged: bool
    iterations: int
    td_error: float


@dataclass(frozen=True)
class ShapleySolution:
    """Shapley 가치 반복의 수렴 결과.

    delta_trace[j]는 j번째 스윕의 sup-norm 변화량입니다.
    """

    q_star: QTable
    v_star: np.ndarray
    alpha_star: MixedPolicy
    beta_star: MixedPolicy
    iterations: int
    delta_trace: tuple[float, ...]
    bellman_residual: float


@dataclass(frozen=True)
class BestResponse:
    """고정된 상대 정책에 대한 최적 대응과 그 가치."""

    policy: MixedPolicy
    v: np.ndarray
    iterations: int


class BoundReport(BaseModel):
    """평가 오차 상한의 각 항.

    total = e_p + e_st + e_sa.
    """

    model_config = {"frozen": True}

    e_p: float = Field(ge=0, description="투영 오차")
    e_st: float = Field(ge=0, description="참 가치함수의 샘플링 오차")
    e_sa: float = Field(ge=0, description="근사 가치함수의 샘플링 오차")
    total: float = Field(ge=0)
    nu_min: float = Field(gt=0)
    c_p_hat: float = Field(ge=0)
    delta: float = Field(gt=0, lt=1)
    n: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_total(self) -> "BoundReport":
        expected = self.e_p + self.e_st + self.e_sa
        if abs(self.total - expected) > 1e-9 * max(1.0, expected):
            raise ValueError(
                f"total {self.total} differs from component sum {expected}"
            )
        return self

    @classmethod
    def assemble(
        cls,
        e_p: float,
        e_st: float,
        e_sa: float,
        nu_min: float,
        c_p_hat: float,
        delta: float,
        n: int,
    ) -> "BoundReport":
        return cls(
            e_p=e_p,
            e_st=e_st,
            e_sa=e_sa,
            total=e_p + e_st + e_sa,
            nu_min=nu_min,
            c_p_hat=c_p_hat,
            delta=delta,
            n=n,
        )


class IterationDiagnostics(BaseModel):
    """외부 반복 한 번의 진단 값."""

    model_config = {"frozen": True}

    iteration: int
    theta: tuple[float, ...]
    td_error: float
    exploration_rate: float
    dataset_size: int
    inner_iterations: int
    inner_converged: bool
    theta_change: Optional[float] = None


class TrainReport(BaseModel):
    """Minimax LSPI 학습 결과."""

    model_config = {"frozen": True}

    theta_trace: tuple[tuple[float, ...], ...]
    beta_final: MixedPolicy
    converged: bool
    diagnostics: tuple[IterationDiagnostics, ...]

    @property
    def iterations(self) -> int:
        return len(self.diagnostics)

    @property
    def theta_final(self) -> np.ndarray:
        return np.array(self.theta_trace[-1], dtype=float)
