"""Unit tests for PolicyEvaluationService."""

import logging

import numpy as np
import pytest

from app.common.exception import (
    DomainError,
    InsufficientDataError,
    NumericalDivergenceError,
)
from app.common.utils.rng import make_rng
from app.game.application.services import (
    PolicyEvaluationService,
    collect_exhaustive,
)
from app.game.domain.entities import Dataset, Sample
from app.game.domain.value_objects import MixedPolicy, Player, StateSpace
from config.settings import settings
from tests.factories import make_dataset, make_params


def _self_loop_dataset(repeats: int = 5):
    """(2,2)에서 자기 자신으로 가는 전이만 담은 설계 (m=2, L=2)."""
    rows = []
    for a in (0, 1):
        for b in (0, 1):
            for k in range(repeats):
                rows.append(((2, 2), a, b, 1.0 + 0.1 * k, (2, 2), 0.3))
    return make_dataset(rows)


class TestEmpiricalTransitions:
    """경험 커널 p̂과 가중치 w."""

    def test_frequencies_and_weights(self, tiny_params):
        """관측 비율과 count^(-1/2) 가중치."""
        ds = make_dataset(
            [
                ((0, 0), 0, 0, 0.1, (1, 0), 0.1),
                ((0, 0), 0, 0, 0.2, (0, 1), 0.2),
                ((1, 0), 1, 0, 0.3, (0, 0), 0.3),
            ]
        )

        kernel = PolicyEvaluationService.empirical_transitions(ds, tiny_params)

        assert kernel.distribution(((0, 0), 0, 0)) == {(0, 1): 0.5, (1, 0): 0.5}
        assert kernel.weight(((0, 0), 0, 0)) == pytest.approx(2**-0.5)
        assert kernel.weight(((1, 0), 1, 0)) == 1.0

    def test_unobserved_triple(self, tiny_params):
        """관측되지 않은 삼중항은 p̂ = 0, w = q_max."""
        ds = make_dataset([((0, 0), 0, 0, 0.1, (1, 0), 0.1)])

        kernel = PolicyEvaluationService.empirical_transitions(ds, tiny_params)

        assert kernel.distribution(((1, 1), 1, 1)) == {}
        assert not kernel.is_observed(((1, 1), 1, 1))
        assert kernel.weight(((1, 1), 1, 1)) == pytest.approx(tiny_params.q_max)


class TestBellmanTargets:
    """fitted-Q 목표값."""

    def test_defender_target(self, tiny_params):
        """y = r + γ·max_a′ Σ_b′ β·q̂(x′)."""
        sample = Sample(x=(0, 0), a=0, b=0, r=0.5, x_next=(1, 0), dt=0.5)
        beta = MixedPolicy.uniform(((1, 0),), Player.DEFENDER)

        target = PolicyEvaluationService.bellman_target(
            sample, beta, np.array([1.0, 2.0, 0.0, 0.0]), tiny_params
        )

        assert target == pytest.approx(0.5 + 0.9 * 3.5)

    def test_attacker_target_is_symmetric(self, tiny_params):
        """공격자 정책이면 y = r + γ·min_b′ Σ_a′ α·q̂(x′)."""
        ds = make_dataset([((0, 0), 0, 0, 0.5, (1, 0), 0.5)])
        alpha = MixedPolicy.uniform(((1, 0),), Player.ATTACKER)

        targets = PolicyEvaluationService.bellman_targets(
            ds, alpha, np.array([1.0, 2.0, 0.0, 0.0]), tiny_params
        )

        assert targets[0] == pytest.approx(0.5 + 0.9 * 3.0)

    def test_gamma_zero_returns_rewards(self):
        """γ = 0이면 목표값은 실현 보상 그대로다."""
        params = make_params(gamma=0.0)
        ds = make_dataset([((0, 0), 1, 0, -0.7, (0, 1), 0.4)])
        beta = MixedPolicy.uniform(((0, 1),), Player.DEFENDER)

        targets = PolicyEvaluationService.bellman_targets(
            ds, beta, np.ones(4), params
        )

        assert targets.tolist() == [-0.7]

    def test_kernel_form_matches_observed_form_in_normal_equations(
        self, small_params
    ):
        """관측 후속 상태 목표값과 p̂ 기반 T̂는 같은 Φᵀy를 갖는다."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 3, make_rng(8))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)
        theta = np.array([0.2, -0.1, 0.4, 0.3])
        phi = PolicyEvaluationService.features_of(ds)

        observed = PolicyEvaluationService.bellman_targets(
            ds, beta, theta, small_params
        )
        kernel_form = PolicyEvaluationService.empirical_bellman(
            theta, ds, beta, small_params
        )

        assert np.allclose(phi.T @ observed, phi.T @ kernel_form)


class TestEvaluatePolicy:
    """고정 정책 평가."""

    def test_gamma_zero_is_min_norm_regression(self):
        """γ = 0이면 θ는 실현 보상의 최소 노름 회귀해와 1e-10 안에서 같다."""
        params = make_params(L=2, gamma=0.0)
        space = StateSpace.enumerate(params, cap=100)
        ds = collect_exhaustive(params, space, 4, make_rng(9))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)
        phi = PolicyEvaluationService.features_of(ds)

        result = PolicyEvaluationService.evaluate_policy(ds, beta, params)

        expected = np.linalg.pinv(phi, rcond=settings.rank_rtol) @ ds.r
        assert np.max(np.abs(result.theta - expected)) <= 1e-10
        assert result.converged
        assert result.iterations == 1

    def test_converges_to_projected_fixed_point(self):
        """수렴한 θ는 Π̂T̂의 고정점이다."""
        params = make_params(L=2, gamma=0.2)
        space = StateSpace.enumerate(params, cap=100)
        ds = collect_exhaustive(params, space, 5, make_rng(10))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)

        result = PolicyEvaluationService.evaluate_policy(
            ds, beta, params, tol=1e-10, max_iter=2000
        )
        step = PolicyEvaluationService.least_squares_step(
            ds, beta, result.theta, params
        )

        assert result.converged
        assert np.allclose(step, result.theta, atol=1e-8)

    def test_too_few_samples(self, tiny_params):
        """n < d이면 InsufficientDataError."""
        ds = make_dataset([((0, 0), 0, 0, 0.1, (1, 0), 0.1)] * 3)
        beta = MixedPolicy.uniform(((0, 0), (1, 0)), Player.DEFENDER)

        with pytest.raises(InsufficientDataError):
            PolicyEvaluationService.evaluate_policy(ds, beta, tiny_params)

    def test_divergence_guard(self, small_params, monkeypatch):
        """‖θ‖가 임계값을 넘으면 NumericalDivergenceError."""
        monkeypatch.setattr(settings, "divergence_threshold", 1e-9)
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 2, make_rng(12))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)

        with pytest.raises(NumericalDivergenceError) as exc_info:
            PolicyEvaluationService.evaluate_policy(ds, beta, small_params)

        assert exc_info.value.exit_code == 3

    def test_max_iter_reports_not_converged(self, small_params):
        """max_iter 안에 수렴하지 못하면 converged=False."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 2, make_rng(13))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)

        result = PolicyEvaluationService.evaluate_policy(
            ds, beta, small_params, tol=1e-14, max_iter=1
        )

        assert not result.converged
        assert result.iterations == 1

    def test_rejects_nonpositive_tolerance(self, small_params):
        """tol ≤ 0은 종료 코드 1의 DomainError."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 1, make_rng(14))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)

        with pytest.raises(DomainError) as exc_info:
            PolicyEvaluationService.evaluate_policy(
                ds, beta, small_params, tol=0.0
            )

        assert exc_info.value.exit_code == 1

    def test_fixed_point_does_not_depend_on_start(self, small_params):
        """θ₀ = 0과 무작위 θ₀에서 시작해도 같은 고정점에 도달한다."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 5, make_rng(15))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)
        theta0 = make_rng(16).normal(scale=10.0, size=small_params.d)

        from_zero = PolicyEvaluationService.evaluate_policy(
            ds, beta, small_params, tol=1e-12, max_iter=5000
        )
        from_random = PolicyEvaluationService.evaluate_policy(
            ds, beta, small_params, tol=1e-12, max_iter=5000, theta0=theta0
        )

        assert from_zero.converged and from_random.converged
        np.testing.assert_allclose(
            from_random.theta, from_zero.theta, rtol=0, atol=1e-8
        )

    def test_start_at_fixed_point_stays_put(self, small_params):
        """고정점에서 시작하면 첫 반복에서 그대로 멈춘다."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 5, make_rng(17))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)
        fixed = PolicyEvaluationService.evaluate_policy(
            ds, beta, small_params, tol=1e-12, max_iter=5000
        )

        again = PolicyEvaluationService.evaluate_policy(
            ds, beta, small_params, tol=1e-8, theta0=fixed.theta
        )

        assert again.converged
        assert again.iterations == 1
        np.testing.assert_allclose(again.theta, fixed.theta, rtol=0, atol=1e-9)

    def test_sample_order_does_not_matter(self, small_params):
        """샘플 순서를 섞어도 least_squares_step 결과는 같다."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 3, make_rng(18))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)
        theta = make_rng(19).normal(size=small_params.d)
        order = make_rng(20).permutation(ds.n)
        shuffled = Dataset(
            xs=ds.xs[order],
            a=ds.a[order],
            b=ds.b[order],
            r=ds.r[order],
            x_next=ds.x_next[order],
            dt=ds.dt[order],
        )

        original = PolicyEvaluationService.least_squares_step(
            ds, beta, theta, small_params
        )
        permuted = PolicyEvaluationService.least_squares_step(
            shuffled, beta, theta, small_params
        )

        np.testing.assert_allclose(permuted, original, rtol=0, atol=1e-10)

    def test_rank_deficient_features_warn(self, caplog):
        """a, b가 한 번도 바뀌지 않으면 Φ의 랭크 부족을 경고한다."""
        params = make_params(L=2, gamma=0.0)
        ds = make_dataset(
            [
                ((0, 0), 0, 0, 0.5, (1, 0), 0.5),
                ((1, 0), 0, 0, 0.6, (1, 1), 0.4),
                ((1, 1), 0, 0, 0.7, (2, 1), 0.3),
                ((2, 1), 0, 0, 0.8, (2, 2), 0.2),
                ((2, 2), 0, 0, 0.9, (1, 2), 0.1),
            ]
        )
        beta = MixedPolicy.uniform(
            StateSpace.enumerate(params, cap=100).states, Player.DEFENDER
        )

        with caplog.at_level(logging.WARNING):
            result = PolicyEvaluationService.evaluate_policy(ds, beta, params)

        assert PolicyEvaluationService.feature_rank(
            PolicyEvaluationService.features_of(ds)
        ) == params.m
        assert "rank 2 < d=4" in caplog.text
        assert np.all(np.abs(result.theta[params.m :]) <= 1e-12)

    def test_full_rank_design_is_silent(self, small_params, caplog):
        """모든 (x, a, b)를 방문한 설계는 랭크 d로 경고가 없다."""
        space = StateSpace.enumerate(small_params, cap=100)
        ds = collect_exhaustive(small_params, space, 2, make_rng(21))
        beta = MixedPolicy.uniform(space.states, Player.DEFENDER)

        with caplog.at_level(logging.WARNING):
            PolicyEvaluationService.evaluate_policy(ds, beta, small_params)

        assert PolicyEvaluationService.feature_rank(
            PolicyEvaluationService.features_of(ds)
        ) == small_params.d
        assert "rank" not in caplog.text


class TestContraction:
    """T̂의 σ-노름 축소성."""

    def test_contraction_on_self_loop_design(self):
        """무작위 100쌍에서 ‖T̂q̂₁ − T̂q̂₂‖_σ ≤ γ‖q̂₁ − q̂₂‖_σ + 1e-9."""
        params = make_params(L=2, gamma=0.8)
        ds = _self_loop_dataset()
        beta = MixedPolicy(
            player=Player.DEFENDER, probs={(2, 2): (0.3, 0.7)}
        )
        kernel = PolicyEvaluationService.empirical_transitions(ds, params)
        rng = make_rng(14)

        for _ in range(100):
            theta1 = rng.normal(size=params.d)
            theta2 = theta1.copy()
            theta2[: params.m] += rng.normal(size=params.m)

            lhs, rhs = PolicyEvaluationService.contraction_ratio(
                ds, beta, theta1, theta2, params, kernel
            )

            assert lhs <= params.gamma * rhs + 1e-9
