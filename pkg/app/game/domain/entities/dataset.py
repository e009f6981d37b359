"""Sample and Dataset Domain Entities.

A Dataset is built once (collection or file load) and frozen afterwards; the
columns are numpy arrays so evaluation can work on whole batches.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np
from pydantic import BaseModel, Field

from app.common.exception import DatasetMismatchError, InsufficientDataError
from app.game.domain.value_objects import GameParams, State

Triple = tuple[State, int, int]


class Sample(BaseModel):
    """전이 샘플 (x, a, b, r, x′, Δt)."""

    model_config = {"frozen": True}

    x: State
    a: int = Field(ge=0, le=1)
    b: int = Field(ge=0, le=1)
    r: float
    x_next: State
    dt: float = Field(gt=0, description="실현된 체류 시간")

    @property
    def triple(self) -> Triple:
        return (self.x, self.a, self.b)


@dataclass(frozen=True, eq=False)
class Dataset:
    """순서가 있는 전이 샘플 집합.

    생성 후 읽기 전용이며, 방문 횟수(counts)와 후속 상태별 횟수(pair_counts)는
    샘플에서 유도됩니다.
    """

    xs: np.ndarray
    a: np.ndarray
    b: np.ndarray
    r: np.ndarray
    x_next: np.ndarray
    dt: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=np.int64)
        n = xs.shape[0]
        if xs.ndim != 2:
            raise DatasetMismatchError(message="States must form an (n, m) array")
        columns = {
            "xs": xs,
            "a": np.asarray(self.a, dtype=np.int64).reshape(n),
            "b": np.asarray(self.b, dtype=np.int64).reshape(n),
            "r": np.asarray(self.r, dtype=float).reshape(n),
            "x_next": np.asarray(self.x_next, dtype=np.int64).reshape(xs.shape),
            "dt": np.asarray(self.dt, dtype=float).reshape(n),
        }
        if np.any(columns["dt"] <= 0):
            raise DatasetMismatchError(message="Every sojourn dt must be > 0")
        for name in ("a", "b"):
            if np.any((columns[name] != 0) & (columns[name] != 1)):
                raise DatasetMismatchError(message=f"Action {name} must be 0 or 1")
        for name, column in columns.items():
            column.setflags(write=False)
            object.__setattr__(self, name, column)

    # === Constructors ===

    @classmethod
    def from_samples(cls, samples: Iterable[Sample]) -> "Dataset":
        samples = list(samples)
        if not samples:
            raise InsufficientDataError(message="Dataset has no samples")
        return cls(
            xs=np.array([s.x for s in samples]),
            a=np.array([s.a for s in samples]),
            b=np.array([s.b for s in samples]),
            r=np.array([s.r for s in samples]),
            x_next=np.array([s.x_next for s in samples]),
            dt=np.array([s.dt for s in samples]),
        )

    # === Queries ===

    @property
    def n(self) -> int:
        return int(self.xs.shape[0])

    @property
    def m(self) -> int:
        return int(self.xs.shape[1])

    def __len__(self) -> int:
        return self.n

    def sample(self, k: int) -> Sample:
        return Sample(
            x=tuple(int(v) for v in self.xs[k]),
            a=int(self.a[k]),
            b=int(self.b[k]),
            r=float(self.r[k]),
            x_next=tuple(int(v) for v in self.x_next[k]),
            dt=float(self.dt[k]),
        )

    @property
    def samples(self) -> Iterator[Sample]:
        return (self.sample(k) for k in range(self.n))

    def triples(self) -> list[Triple]:
        return [
            (tuple(int(v) for v in x), int(a), int(b))
            for x, a, b in zip(self.xs, self.a, self.b)
        ]

    @cached_property
    def counts(self) -> dict[Triple, int]:
        """(x, a, b) → 방문 횟수."""
        return dict(Counter(self.triples()))

    @cached_property
    def pair_counts(self) -> dict[tuple[State, int, int, State], int]:
        """(x, a, b, x′) → 관측 횟수."""
        nexts = [tuple(int(v) for v in x) for x in self.x_next]
        return dict(
            Counter(
                (x, a, b, y) for (x, a, b), y in zip(self.triples(), nexts)
            )
        )

    def validate_against(self, params: GameParams) -> None:
        """상태 차원과 범위가 파라미터와 맞는지 확인한다.

        Raises:
            DatasetMismatchError: 차원 또는 범위 불일치
        """
        if self.m != params.m:
            raise DatasetMismatchError(
                message=f"Dataset has m={self.m} but parameters say m={params.m}",
                extra={"dataset_m": self.m, "params_m": params.m},
            )
        for name, states in (("x", self.xs), ("x_next", self.x_next)):
            if np.any(states < 0) or np.any(states > params.L):
                raise DatasetMismatchError(
                    message=f"Dataset {name} values fall outside [0, {params.L}]"
                )
        moved = np.abs(self.x_next.sum(axis=1) - self.xs.sum(axis=1))
        if np.any(moved > 1):
            raise DatasetMismatchError(
                message="Dataset contains transitions that move more than one job"
            )
