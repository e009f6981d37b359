"""Policy evaluation from sampled data.

Fitted-Q evaluation of a fixed defender policy: targets are rebuilt from the
stored (x, a, b, r, x′) on every inner pass and regressed onto the features
with a minimum-norm least-squares solve. The same targets in kernel form
(p̂-weighted successors) give the empirical Bellman operator T̂; both forms
share Φᵀy, so the fixed point reached here is that of Π̂T̂.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from app.common.exception import (
    DomainError,
    InsufficientDataError,
    NumericalDivergenceError,
)
from app.game.domain.entities import Dataset, Sample
from app.game.domain.services import FeatureService
from app.game.domain.value_objects import (
    EmpiricalKernel,
    EvaluationResult,
    GameParams,
    MixedPolicy,
    Player,
    State,
)
from config.settings import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuccessorValues:
    """고유한 후속 상태들에 대한 특징 텐서와 상대 정책.

    features[u, a, b]는 u번째 후속 상태의 φ(x′, a, b),
    mixes[u]는 그 상태에서 고정된 플레이어의 혼합 전략입니다.
    """

    states: np.ndarray
    features: np.ndarray
    mixes: np.ndarray
    player: Player

    @classmethod
    def build(
        cls, states: np.ndarray, policy: MixedPolicy
    ) -> "SuccessorValues":
        states = np.asarray(states, dtype=np.int64)
        s = states.shape[0]
        features = np.empty((s, 2, 2, states.shape[1] + 2))
        for a in (0, 1):
            for b in (0, 1):
                features[:, a, b] = FeatureService.feature_matrix(
                    states, np.full(s, a), np.full(s, b)
                )
        mixes = policy.as_array(tuple(tuple(int(v) for v in x) for x in states))
        return cls(
            states=states,
            features=features,
            mixes=mixes,
            player=policy.player,
        )

    def values(self, q: np.ndarray) -> np.ndarray:
        """상태별 다음 단계 가치.

        방어자 정책 β가 고정이면 max_{a′} Σ_{b′} β(b′)·q(a′, b′),
        공격자 정책 α가 고정이면 min_{b′} Σ_{a′} α(a′)·q(a′, b′).
        """
        if self.player == Player.DEFENDER:
            return np.einsum("uab,ub->ua", q, self.mixes).max(axis=1)
        return np.einsum("uab,ua->ub", q, self.mixes).min(axis=1)

    def values_for_theta(self, theta: np.ndarray) -> np.ndarray:
        return self.values(self.features @ theta)


class PolicyEvaluationService:
    """데이터 기반 정책 평가 서비스.

    모든 최소제곱 풀이는 pinv(rcond=rank_rtol)의 최소 노름 해입니다.
    """

    # === Empirical kernel ===

    @staticmethod
    def empirical_transitions(
        ds: Dataset, params: GameParams
    ) -> EmpiricalKernel:
        """관측 빈도의 비율로 p̂(x′|x,a,b)와 w = count^(−1/2)를 만든다.

        관측되지 않은 (x, a, b)의 w는 (mL + c_b)/(λ(1 − γ)) 입니다.
        """
        if ds.n < 1:
            raise InsufficientDataError(message="Empty dataset")
        counts = ds.counts
        p_hat: dict[tuple, dict[State, float]] = defaultdict(dict)
        for (x, a, b, y), count in ds.pair_counts.items():
            p_hat[(x, a, b)][y] = count / counts[(x, a, b)]
        return EmpiricalKernel(
            p_hat={triple: dict(sorted(d.items())) for triple, d in p_hat.items()},
            weights={triple: count**-0.5 for triple, count in counts.items()},
            default_weight=params.q_max,
        )

    # === Bellman targets ===

    @staticmethod
    def successor_values(
        ds: Dataset, policy: MixedPolicy
    ) -> tuple[SuccessorValues, np.ndarray]:
        """고유 후속 상태와 샘플별 역인덱스."""
        unique, inverse = np.unique(ds.x_next, axis=0, return_inverse=True)
        return SuccessorValues.build(unique, policy), np.ravel(inverse)

    @staticmethod
    def bellman_targets(
        ds: Dataset,
        policy: MixedPolicy,
        theta: np.ndarray,
        params: GameParams,
    ) -> np.ndarray:
        """관측된 후속 상태를 쓰는 샘플별 fitted-Q 목표값 y.

        policy.player가 DEFENDER이면 y = r + γ·max_{a′} Σ_{b′} β·q̂(x′),
        ATTACKER이면 y = r + γ·min_{b′} Σ_{a′} α·q̂(x′) 입니다.
        """
        theta = FeatureService.check_theta(theta, params)
        if params.gamma == 0.0:
            return ds.r.copy()
        successors, inverse = PolicyEvaluationService.successor_values(
            ds, policy
        )
        return ds.r + params.gamma * successors.values_for_theta(theta)[inverse]

    @staticmethod
    def bellman_target(
        sample: Sample,
        beta: MixedPolicy,
        theta_prev: np.ndarray,
        params: GameParams,
    ) -> float:
        """단일 샘플의 목표값 r + γ·max_{a′} Σ_{b′} β(b′|x′)·q̂(x′,a′,b′)."""
        ds = Dataset.from_samples([sample])
        return float(
            PolicyEvaluationService.bellman_targets(
                ds, beta, theta_prev, params
            )[0]
        )

    @staticmethod
    def empirical_bellman(
        theta: np.ndarray,
        ds: Dataset,
        beta: MixedPolicy,
        params: GameParams,
        kernel: EmpiricalKernel | None = None,
    ) -> np.ndarray:
        """[T̂q̂](x_k,a_k,b_k) = r̂_k + γ·Σ_{x′} p̂(x′|x_k,a_k,b_k)·V(x′)."""
        theta = FeatureService.check_theta(theta, params)
        q = np.asarray(theta, dtype=float)
        return PolicyEvaluationService.empirical_bellman_of(
            lambda states: SuccessorValues.build(states, beta).values_for_theta(
                q
            ),
            ds,
            params,
            kernel,
        )

    @staticmethod
    def empirical_bellman_of(
        next_values,
        ds: Dataset,
        params: GameParams,
        kernel: EmpiricalKernel | None = None,
    ) -> np.ndarray:
        """임의의 후속 가치 함수 V에 대한 T̂.

        next_values는 (U, m) 상태 배열을 받아 (U,) 가치를 돌려주는 함수입니다.
        """
        if params.gamma == 0.0:
            return ds.r.copy()
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        expected = PolicyEvaluationService.kernel_expectation(
            kernel, ds.triples(), next_values
        )
        return ds.r + params.gamma * expected

    @staticmethod
    def kernel_expectation(
        kernel: EmpiricalKernel,
        triples: list[tuple],
        next_values,
        distribution=None,
    ) -> np.ndarray:
        """삼중항별 Σ_{x′} p(x′|x,a,b)·V(x′) (기본값 p = p̂)."""
        distribution = distribution or kernel.distribution
        distinct = list(dict.fromkeys(triples))
        supports = {t: distribution(t) for t in distinct}
        successors = sorted({y for d in supports.values() for y in d})
        values = dict(
            zip(successors, next_values(np.array(successors, dtype=np.int64)))
        )
        per_triple = {
            t: sum(p * values[y] for y, p in d.items())
            for t, d in supports.items()
        }
        return np.array([per_triple[t] for t in triples], dtype=float)

    # === Least squares ===

    @staticmethod
    def features_of(ds: Dataset) -> np.ndarray:
        return FeatureService.feature_matrix(ds.xs, ds.a, ds.b)

    @staticmethod
    def feature_rank(phi: np.ndarray) -> int:
        """pinv와 같은 상대 cutoff(rank_rtol)로 센 Φ의 수치적 랭크."""
        singular = np.linalg.svd(phi, compute_uv=False)
        if singular.size == 0 or singular[0] == 0.0:
            return 0
        return int(np.sum(singular > settings.rank_rtol * singular[0]))

    @staticmethod
    def least_squares_step(
        ds: Dataset,
        beta: MixedPolicy,
        theta_prev: np.ndarray,
        params: GameParams,
    ) -> np.ndarray:
        """θ = Φ⁺Y, Y는 theta_prev로 만든 목표값.

        Raises:
            InsufficientDataError: n < d
        """
        if ds.n < params.d:
            raise InsufficientDataError(
                message=f"Need at least d={params.d} samples, got {ds.n}"
            )
        phi = PolicyEvaluationService.features_of(ds)
        y = PolicyEvaluationService.bellman_targets(
            ds, beta, theta_prev, params
        )
        return np.linalg.pinv(phi, rcond=settings.rank_rtol) @ y

    @staticmethod
    def evaluate_policy(
        ds: Dataset,
        policy: MixedPolicy,
        params: GameParams,
        tol: float | None = None,
        max_iter: int | None = None,
        theta0: np.ndarray | None = None,
    ) -> EvaluationResult:
        """‖θ_{j+1} − θ_j‖₂ < tol 이 될 때까지 least_squares_step을 반복한다.

        γ = 0이면 한 번의 회귀로 끝납니다.

        Raises:
            InsufficientDataError: n < d
            NumericalDivergenceError: ‖θ‖가 발산 임계값을 넘은 경우
        """
        tol = settings.evaluation_tol if tol is None else tol
        max_iter = settings.evaluation_max_iter if max_iter is None else max_iter
        if tol <= 0:
            raise DomainError(message="tol must be positive")
        if ds.n < params.d:
            raise InsufficientDataError(
                message=f"Need at least d={params.d} samples, got {ds.n}"
            )

        phi = PolicyEvaluationService.features_of(ds)
        solver = np.linalg.pinv(phi, rcond=settings.rank_rtol)
        rank = PolicyEvaluationService.feature_rank(phi)
        if rank < params.d:
            logger.warning(
                "Feature matrix has rank %d < d=%d; weights along the "
                "unobserved directions stay at zero",
                rank,
                params.d,
            )
        theta = (
            np.zeros(params.d)
            if theta0 is None
            else FeatureService.check_theta(theta0, params).copy()
        )

        if params.gamma == 0.0:
            theta = solver @ ds.r
            return EvaluationResult(
                theta=theta,
                converged=True,
                iterations=1,
                td_error=FeatureService.sigma_norm(phi @ theta - ds.r),
            )

        successors, inverse = PolicyEvaluationService.successor_values(
            ds, policy
        )

        def targets(w: np.ndarray) -> np.ndarray:
            return ds.r + params.gamma * successors.values_for_theta(w)[inverse]

        converged = False
        iterations = 0
        for iterations in range(1, max_iter + 1):
            theta_next = solver @ targets(theta)
            norm = float(np.linalg.norm(theta_next))
            if not np.isfinite(norm) or norm > settings.divergence_threshold:
                raise NumericalDivergenceError(
                    message=(
                        f"Weight norm {norm:.3e} exceeded "
                        f"{settings.divergence_threshold:.0e} "
                        f"at inner iteration {iterations}"
                    )
                )
            change = float(np.linalg.norm(theta_next - theta))
            theta = theta_next
            if change < tol:
                converged = True
                break

        td_error = FeatureService.sigma_norm(phi @ theta - targets(theta))
        if not converged:
            logger.warning(
                "Policy evaluation stopped at max_iter=%d (td error %.3e)",
                max_iter,
                td_error,
            )
        logger.debug(
            "Policy evaluation: %d iterations, td error %.3e",
            iterations,
            td_error,
        )
        return EvaluationResult(
            theta=theta,
            converged=converged,
            iterations=iterations,
            td_error=td_error,
        )

    # === Diagnostics ===

    @staticmethod
    def contraction_ratio(
        ds: Dataset,
        beta: MixedPolicy,
        theta1: np.ndarray,
        theta2: np.ndarray,
        params: GameParams,
        kernel: EmpiricalKernel | None = None,
    ) -> tuple[float, float]:
        """(‖T̂q̂₁ − T̂q̂₂‖_σ, ‖Φθ₁ − Φθ₂‖_σ) 쌍."""
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        phi = PolicyEvaluationService.features_of(ds)
        lhs = FeatureService.sigma_norm(
            PolicyEvaluationService.empirical_bellman(
                theta1, ds, beta, params, kernel
            )
            - PolicyEvaluationService.empirical_bellman(
                theta2, ds, beta, params, kernel
            )
        )
        rhs = FeatureService.sigma_norm(phi @ (theta1 - theta2))
        return lhs, rhs
