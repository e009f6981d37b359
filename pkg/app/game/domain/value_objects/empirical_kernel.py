"""Empirical transition kernel value object."""

from dataclasses import dataclass

import numpy as np

from app.game.domain.value_objects.state import State

Triple = tuple[State, int, int]


@dataclass(frozen=True)
class EmpiricalKernel:
    """관측 빈도로 추정한 전이 확률 p̂과 가중치 w.

    관측되지 않은 (x, a, b)는 p̂ ≡ 0, w = default_weight 입니다.
    """

    p_hat: dict[Triple, dict[State, float]]
    weights: dict[Triple, float]
    default_weight: float

    def distribution(self, triple: Triple) -> dict[State, float]:
        return self.p_hat.get(triple, {})

    def weight(self, triple: Triple) -> float:
        return self.weights.get(triple, self.default_weight)

    def is_observed(self, triple: Triple) -> bool:
        return triple in self.p_hat

    def sample_weights(self, triples: list[Triple]) -> np.ndarray:
        """샘플 순서대로 W_k = w(x_k, a_k, b_k)."""
        return np.array([self.weight(t) for t in triples], dtype=float)
