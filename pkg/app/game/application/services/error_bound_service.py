"""Evaluation error bound.

Computes every term of the finite-sample bound on ‖Q − Q̂‖_σ from a dataset,
its feature matrix and (at desk scale) the true model: the projection error
e_p, the sampling error of the true value function e_st and the sampling
error of the approximate value function e_sa. Also hosts the pointwise
checks that accompany the bound.
"""

import logging
import math

import numpy as np
from pydantic import BaseModel

from app.common.exception import DomainError, InsufficientDataError
from app.game.application.services.policy_evaluation_service import (
    PolicyEvaluationService,
    SuccessorValues,
)
from app.game.domain.entities import Dataset
from app.game.domain.services import FeatureService, QueueDynamicsService
from app.game.domain.value_objects import (
    BoundReport,
    EmpiricalKernel,
    GameParams,
    MixedPolicy,
    QTable,
    StateSpace,
)
from config.settings import settings

logger = logging.getLogger(__name__)


class PointwiseCheck(BaseModel):
    """삼중항별 부등식 |gap| ≤ bound 검사 결과."""

    model_config = {"frozen": True}

    n_checked: int
    violations: int
    max_gap: float
    max_ratio: float

    @property
    def holds(self) -> bool:
        return self.violations == 0


class NearOptimality(BaseModel):
    """‖Q* − q̂‖∞, ε̂ 그리고 2γε̂/(1−γ)²."""

    model_config = {"frozen": True}

    sup_error: float
    eps_hat: float
    bound: float


def _check_delta(delta: float) -> float:
    if not 0.0 < delta < 1.0:
        raise DomainError(message=f"delta must lie in (0, 1): {delta}")
    return delta


class ErrorBoundService:
    """평가 오차 상한 계산 서비스.

    로그는 모두 자연로그입니다.
    """

    @staticmethod
    def estimate_cp(
        ds: Dataset,
        params: GameParams,
        delta: float,
        kernel: EmpiricalKernel | None = None,
    ) -> float:
        """Ĉ_P = max |p̂ − p| / (√ln(1/δ)·w), 관측된 (x, a, b)와 후속 상태 합집합 위에서.

        Raises:
            InsufficientDataError: 빈 데이터셋
        """
        _check_delta(delta)
        if ds.n == 0:
            raise InsufficientDataError(message="Empty dataset")
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        scale = math.sqrt(math.log(1.0 / delta))
        c_p = 0.0
        for triple, p_hat in kernel.p_hat.items():
            x, a, b = triple
            p_true = QueueDynamicsService.transition_distribution(
                x, a, b, params
            ).as_dict()
            gap = max(
                abs(p_hat.get(y, 0.0) - p_true.get(y, 0.0))
                for y in set(p_hat) | set(p_true)
            )
            c_p = max(c_p, gap / (scale * kernel.weight(triple)))
        return c_p

    @staticmethod
    def projection_error(
        phi: np.ndarray, q_true_on_samples: np.ndarray, gamma: float
    ) -> float:
        """e_p = ‖Q − Π̂Q‖_σ / √(1 − γ²)."""
        q = np.asarray(q_true_on_samples, dtype=float)
        residual = q - FeatureService.project(phi, q, settings.rank_rtol)
        return FeatureService.sigma_norm(residual) / math.sqrt(1.0 - gamma**2)

    @staticmethod
    def sampling_error_true(
        params: GameParams, n: int, nu_min: float, delta: float
    ) -> float:
        """e_st = γL²(mL+c_b)/(λ(1−γ)³)·√(2(m+2)·ln(2/δ)/(n·ν_min)).

        Raises:
            DomainError: nu_min ≤ 0 또는 n < 1
        """
        _check_delta(delta)
        if nu_min <= 0:
            raise DomainError(message=f"nu_min must be positive: {nu_min}")
        if n < 1:
            raise DomainError(message=f"n must be at least 1: {n}")
        g = params.gamma
        lead = g * params.L**2 * params.rho_max / (params.lam * (1.0 - g) ** 3)
        return lead * math.sqrt(
            2.0 * params.d * math.log(2.0 / delta) / (n * nu_min)
        )

    @staticmethod
    def sampling_error_approx(
        ds: Dataset,
        phi: np.ndarray,
        c_p: float,
        params: GameParams,
        delta: float,
        kernel: EmpiricalKernel | None = None,
    ) -> float:
        """e_sa = (1/√n)·‖Π̂ v‖₂, v_k = ((mL+c_b)/λ)(1 + γ/(1−γ)·c_p·√ln(1/δ)·W_k)."""
        _check_delta(delta)
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        weights = kernel.sample_weights(ds.triples())
        g = params.gamma
        v = params.reward_bound * (
            1.0 + g / (1.0 - g) * c_p * math.sqrt(math.log(1.0 / delta)) * weights
        )
        projected = FeatureService.project(phi, v, settings.rank_rtol)
        return float(np.linalg.norm(projected) / math.sqrt(ds.n))

    @staticmethod
    def evaluation_bound(
        ds: Dataset,
        phi: np.ndarray,
        params: GameParams,
        delta: float,
        q_true_on_samples: np.ndarray,
        kernel: EmpiricalKernel | None = None,
    ) -> BoundReport:
        """e_p, e_st, e_sa와 그 합을 모은 보고서."""
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        nu_min = FeatureService.gram_min_eig(phi, settings.rank_rtol)
        c_p = ErrorBoundService.estimate_cp(ds, params, delta, kernel)
        report = BoundReport.assemble(
            e_p=ErrorBoundService.projection_error(
                phi, q_true_on_samples, params.gamma
            ),
            e_st=ErrorBoundService.sampling_error_true(
                params, ds.n, nu_min, delta
            ),
            e_sa=ErrorBoundService.sampling_error_approx(
                ds, phi, c_p, params, delta, kernel
            ),
            nu_min=nu_min,
            c_p_hat=c_p,
            delta=delta,
            n=ds.n,
        )
        logger.info(
            "Error bound: e_p=%.4g e_st=%.4g e_sa=%.4g total=%.4g",
            report.e_p,
            report.e_st,
            report.e_sa,
            report.total,
        )
        return report

    @staticmethod
    def measured_error(
        q_true_on_samples: np.ndarray, phi: np.ndarray, theta: np.ndarray
    ) -> float:
        """‖Q − Φθ‖_σ."""
        return FeatureService.sigma_norm(
            np.asarray(q_true_on_samples) - np.asarray(phi) @ theta
        )

    # === Checks ===

    @staticmethod
    def decomposition_check(
        ds: Dataset,
        phi: np.ndarray,
        beta: MixedPolicy,
        theta_fixed: np.ndarray,
        params: GameParams,
        q_true: QTable,
        kernel: EmpiricalKernel | None = None,
    ) -> tuple[float, float]:
        """분해 부등식의 양변.

        lhs = ‖Q − Q̂_s‖²_σ
        rhs = ‖Q − Π̂Q‖²_σ + (γ‖Q − Q̂_s‖_σ + ‖Π̂T̂Q − Π̂Q‖_σ)²
        """
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        space = q_true.space
        q = q_true.at_samples(space.indices_of(ds.xs), ds.a, ds.b)
        q_hat = phi @ theta_fixed

        def next_values(states: np.ndarray) -> np.ndarray:
            values = q_true.values[space.indices_of(states)]
            mixes = beta.as_array(tuple(tuple(int(v) for v in x) for x in states))
            return np.einsum("uab,ub->ua", values, mixes).max(axis=1)

        t_q = PolicyEvaluationService.empirical_bellman_of(
            next_values, ds, params, kernel
        )
        projected_q = FeatureService.project(phi, q, settings.rank_rtol)
        projected_tq = FeatureService.project(phi, t_q, settings.rank_rtol)
        error = FeatureService.sigma_norm(q - q_hat)
        lhs = error**2
        rhs = FeatureService.sigma_norm(q - projected_q) ** 2 + (
            params.gamma * error
            + FeatureService.sigma_norm(projected_tq - projected_q)
        ) ** 2
        return lhs, rhs

    @staticmethod
    def pointwise_gap_check(
        ds: Dataset,
        theta: np.ndarray,
        beta: MixedPolicy,
        params: GameParams,
        c_p: float,
        delta: float,
        kernel: EmpiricalKernel | None = None,
    ) -> PointwiseCheck:
        """|T̂q̂ − Tq̂| ≤ ((mL+c_b)/λ)(1 + γ/(1−γ)·Ĉ_P·√ln(1/δ)·w) 를 관측된 삼중항마다 검사.

        q̂는 ±q_max로 잘라서 사용하고, 삼중항의 경험 보상 r̂은 그 방문들의
        실현 보상 평균입니다.
        """
        _check_delta(delta)
        kernel = kernel or PolicyEvaluationService.empirical_transitions(
            ds, params
        )
        theta = FeatureService.check_theta(theta, params)

        def clipped_values(states: np.ndarray) -> np.ndarray:
            successors = SuccessorValues.build(states, beta)
            q = np.clip(successors.features @ theta, -params.q_max, params.q_max)
            return successors.values(q)

        triples = list(kernel.p_hat)
        mean_reward: dict = {}
        for t, r in zip(ds.triples(), ds.r):
            total, count = mean_reward.get(t, (0.0, 0))
            mean_reward[t] = (total + r, count + 1)
        r_hat = np.array([mean_reward[t][0] / mean_reward[t][1] for t in triples])
        r_true = np.array(
            [QueueDynamicsService.expected_reward(x, a, b, params) for x, a, b in triples]
        )

        def true_distribution(triple):
            x, a, b = triple
            return QueueDynamicsService.transition_distribution(
                x, a, b, params
            ).as_dict()

        empirical = PolicyEvaluationService.kernel_expectation(
            kernel, triples, clipped_values
        )
        exact = PolicyEvaluationService.kernel_expectation(
            kernel, triples, clipped_values, distribution=true_distribution
        )
        gap = np.abs(
            (r_hat + params.gamma * empirical) - (r_true + params.gamma * exact)
        )
        g = params.gamma
        weights = kernel.sample_weights(triples)
        bound = params.reward_bound * (
            1.0 + g / (1.0 - g) * c_p * math.sqrt(math.log(1.0 / delta)) * weights
        )
        ratio = gap / bound
        return PointwiseCheck(
            n_checked=len(triples),
            violations=int(np.sum(gap > bound)),
            max_gap=float(gap.max()),
            max_ratio=float(ratio.max()),
        )

    @staticmethod
    def reward_gap_violation_rate(ds: Dataset, params: GameParams) -> float:
        """|Δt − E[Δt]| > 1/λ 인 샘플 비율."""
        sojourn = QueueDynamicsService.expected_sojourns(ds.xs, params)
        return float(np.mean(np.abs(ds.dt - sojourn) > 1.0 / params.lam))

    @staticmethod
    def near_optimality_check(
        q_star: QTable,
        q_beta: QTable,
        theta: np.ndarray,
        ds: Dataset,
        params: GameParams,
    ) -> NearOptimality:
        """방문한 삼중항 위에서 ‖Q* − q̂‖∞, ε̂ = max|Q^β − q̂|, 2γε̂/(1−γ)²."""
        space: StateSpace = q_star.space
        idx = space.indices_of(ds.xs)
        q_hat = PolicyEvaluationService.features_of(ds) @ theta
        sup_error = float(np.max(np.abs(q_star.at_samples(idx, ds.a, ds.b) - q_hat)))
        eps_hat = float(np.max(np.abs(q_beta.at_samples(idx, ds.a, ds.b) - q_hat)))
        g = params.gamma
        return NearOptimality(
            sup_error=sup_error,
            eps_hat=eps_hat,
            bound=2.0 * g * eps_hat / (1.0 - g) ** 2,
        )
