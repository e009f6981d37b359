"""Feature Domain Service.

선형 근사 구조: 특징 함수 φ, 특징 행렬, σ-노름, 직교 투영 Π̂,
그리고 Gram 행렬의 최소 양의 고유값을 다룹니다.

φ(x,a,b) = [(x_0+δ_0)², …, (x_{m-1}+δ_{m-1})², a, b]
"""

import numpy as np

from app.common.exception import (
    DegenerateFeaturesError,
    DomainError,
    InsufficientDataError,
)
from app.game.domain.value_objects import GameParams, State

RANK_RTOL = 1e-10


class FeatureService:
    """특징 함수 서비스.

    δ의 동점 처리는 항상 가장 낮은 인덱스입니다 (동역학의 무작위 동점 처리와
    다름). 특징은 (x, a, b)의 결정적 함수여야 하기 때문입니다.
    """

    @staticmethod
    def delta_index(x: State, a: int, b: int) -> int:
        """δ_i = 1이 되는 유일한 인덱스 i."""
        values = np.asarray(x)
        if (a, b) == (1, 0):
            return int(np.argmax(values))
        return int(np.argmin(values))

    @staticmethod
    def delta(x: State, a: int, b: int, i: int) -> int:
        """δ_i(a, b) ∈ {0, 1}.

        Raises:
            DomainError: i가 [0, m) 범위를 벗어난 경우
        """
        if not 0 <= i < len(x):
            raise DomainError(
                message=f"Server index {i} out of range [0, {len(x)})"
            )
        return int(FeatureService.delta_index(x, a, b) == i)

    @staticmethod
    def feature_vector(
        x: State, a: int, b: int, params: GameParams
    ) -> np.ndarray:
        """길이 d = m + 2의 특징 벡터."""
        return FeatureService.feature_matrix(
            np.asarray(x)[None, :], np.array([a]), np.array([b])
        )[0]

    @staticmethod
    def feature_matrix(
        xs: np.ndarray, a: np.ndarray, b: np.ndarray
    ) -> np.ndarray:
        """샘플별 특징 행 φ(x_k, a_k, b_k)를 쌓은 (n, d) 행렬."""
        xs = np.asarray(xs, dtype=np.int64)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n, m = xs.shape
        attacked = (a == 1) & (b == 0)
        target = np.where(attacked, xs.argmax(axis=1), xs.argmin(axis=1))
        shifted = xs.astype(float)
        shifted[np.arange(n), target] += 1.0
        phi = np.empty((n, m + 2))
        phi[:, :m] = shifted**2
        phi[:, m] = a
        phi[:, m + 1] = b
        return phi

    @staticmethod
    def q_hat(
        x: State, a: int, b: int, theta: np.ndarray, params: GameParams
    ) -> float:
        """q̂(x,a,b;θ) = φ(x,a,b)·θ."""
        theta = FeatureService.check_theta(theta, params)
        return float(FeatureService.feature_vector(x, a, b, params) @ theta)

    @staticmethod
    def q_matrices(xs: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """상태별 2x2 표 q̂(x,·,·;θ), shape (S, 2, 2)."""
        xs = np.asarray(xs, dtype=np.int64)
        s = xs.shape[0]
        q = np.empty((s, 2, 2))
        for a in (0, 1):
            for b in (0, 1):
                phi = FeatureService.feature_matrix(
                    xs, np.full(s, a), np.full(s, b)
                )
                q[:, a, b] = phi @ theta
        return q

    @staticmethod
    def check_theta(theta: np.ndarray, params: GameParams) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (params.d,):
            raise DomainError(
                message=f"theta must have length {params.d}, got {theta.shape}"
            )
        if not np.all(np.isfinite(theta)):
            raise DomainError(message="theta contains non-finite entries")
        return theta

    @staticmethod
    def sigma_norm(y: np.ndarray) -> float:
        """‖y‖_σ = sqrt((1/n)·‖y‖²₂).

        Raises:
            DomainError: 빈 벡터
        """
        y = np.asarray(y, dtype=float).ravel()
        if y.size == 0:
            raise DomainError(message="sigma norm of an empty vector")
        return float(np.sqrt(np.mean(y**2)))

    @staticmethod
    def project(
        phi: np.ndarray, y: np.ndarray, rtol: float = RANK_RTOL
    ) -> np.ndarray:
        """열공간 위로의 직교 투영 Π̂y = Φ Φ⁺ y (최소 노름 최소제곱)."""
        phi = np.asarray(phi, dtype=float)
        y = np.asarray(y, dtype=float)
        return phi @ (np.linalg.pinv(phi, rcond=rtol) @ y)

    @staticmethod
    def gram_min_eig(phi: np.ndarray, rtol: float = RANK_RTOL) -> float:
        """(1/n)·ΦᵀΦ의 최소 양의 고유값 ν_min.

        최대 고유값의 rtol배 이하인 고유값은 0으로 취급합니다.

        Raises:
            InsufficientDataError: n < d
            DegenerateFeaturesError: 모든 고유값이 수치적으로 0
        """
        phi = np.asarray(phi, dtype=float)
        n, d = phi.shape
        if n < d:
            raise InsufficientDataError(
                message=f"Need at least {d} samples for the Gram spectrum, got {n}"
            )
        eigenvalues = np.linalg.eigvalsh(phi.T @ phi / n)
        largest = eigenvalues.max()
        if largest <= 0.0:
            raise DegenerateFeaturesError()
        positive = eigenvalues[eigenvalues > rtol * largest]
        if positive.size == 0:
            raise DegenerateFeaturesError()
        return float(positive.min())
