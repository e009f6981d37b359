"""Unit tests for ErrorBoundService."""

import math

import numpy as np
import pytest

from app.common.exception import DomainError, InsufficientDataError
from app.common.utils.rng import make_rng
from app.game.application.services import (
    ErrorBoundService,
    ExactSolverService,
    PolicyEvaluationService,
    collect_exhaustive,
)
from app.game.application.services.minimax_lspi_trainer import EXHAUSTIVE_STREAM
from app.game.domain.entities import Dataset
from app.game.domain.services import QueueDynamicsService
from app.game.domain.value_objects import MixedPolicy, Player
from tests.factories import make_dataset, make_params

DELTA = 0.1


def _bound_scenario(params, seed: int, visits: int, beta=None):
    """전수 설계 데이터셋 위에서 β를 평가하고 상한에 필요한 값들을 모은다."""
    solver = ExactSolverService(params)
    if beta is None:
        beta = solver.shapley_value_iteration().beta_star
    ds = collect_exhaustive(
        params, solver.space, visits, make_rng(seed, EXHAUSTIVE_STREAM)
    )
    result = PolicyEvaluationService.evaluate_policy(
        ds, beta, params, tol=1e-12, max_iter=5000
    )
    q_true = solver.best_response_q(beta)
    q_on_samples = q_true.at_samples(
        solver.space.indices_of(ds.xs), ds.a, ds.b
    )
    phi = PolicyEvaluationService.features_of(ds)
    return ds, phi, beta, result, q_true, q_on_samples


def _sojourn_dataset(x, n: int, params, seed: int) -> Dataset:
    """한 상태에서 (a, b) = (0, 0)으로 n번 샘플링한 데이터셋."""
    rng = make_rng(seed)
    rows = []
    for _ in range(n):
        y, dt = QueueDynamicsService.sample_transition(x, 0, 0, params, rng)
        r = QueueDynamicsService.realized_reward(x, 0, 0, dt, params)
        rows.append((x, 0, 0, r, y, dt))
    return make_dataset(rows)


class TestEstimateCp:
    """Ĉ_P 추정."""

    def test_single_triple(self, tiny_params):
        """Ĉ_P = max|p̂ − p| / (√ln(1/δ)·w)."""
        ds = make_dataset([((0, 0), 0, 0, 0.1, (1, 0), 0.2)] * 2)

        c_p = ErrorBoundService.estimate_cp(ds, tiny_params, DELTA)

        expected = 0.5 / (math.sqrt(math.log(1 / DELTA)) * 2**-0.5)
        assert c_p == pytest.approx(expected)

    def test_exact_frequencies_give_zero(self, tiny_params):
        """관측 비율이 참 커널과 같으면 0."""
        ds = make_dataset(
            [
                ((0, 0), 0, 0, 0.1, (1, 0), 0.2),
                ((0, 0), 0, 0, 0.1, (0, 1), 0.2),
            ]
        )

        assert ErrorBoundService.estimate_cp(ds, tiny_params, DELTA) == 0.0

    @pytest.mark.parametrize("delta", [0.0, 1.0, -0.2, 1.5])
    def test_delta_out_of_range(self, tiny_params, delta):
        """δ ∉ (0, 1)이면 DomainError."""
        ds = make_dataset([((0, 0), 0, 0, 0.1, (1, 0), 0.2)])

        with pytest.raises(DomainError):
            ErrorBoundService.estimate_cp(ds, tiny_params, delta)

    def test_empty_dataset(self, tiny_params):
        """빈 데이터셋은 InsufficientDataError."""
        ds = Dataset(
            xs=np.empty((0, 2)),
            a=np.empty(0),
            b=np.empty(0),
            r=np.empty(0),
            x_next=np.empty((0, 2)),
            dt=np.empty(0),
        )

        with pytest.raises(InsufficientDataError):
            ErrorBoundService.estimate_cp(ds, tiny_params, DELTA)


class TestBoundTerms:
    """상한의 개별 항."""

    def test_gamma_zero_has_no_true_sampling_error(self):
        """γ = 0이면 e_st = 0."""
        params = make_params(gamma=0.0)

        assert ErrorBoundService.sampling_error_true(params, 100, 0.5, DELTA) == 0.0

    def test_true_sampling_error_formula(self, small_params):
        """e_st 닫힌 형태."""
        e_st = ErrorBoundService.sampling_error_true(small_params, 400, 0.25, DELTA)

        lead = 0.5 * 4 * 5 / (1.0 * 0.5**3)
        expected = lead * math.sqrt(2 * 4 * math.log(2 / DELTA) / (400 * 0.25))
        assert e_st == pytest.approx(expected)

    def test_true_sampling_error_shrinks_with_n(self, small_params):
        """n이 4배면 e_st는 절반."""
        small = ErrorBoundService.sampling_error_true(small_params, 100, 1.0, DELTA)
        large = ErrorBoundService.sampling_error_true(small_params, 400, 1.0, DELTA)

        assert large == pytest.approx(small / 2)

    def test_true_sampling_error_worked_value(self):
        """m=2, L=2, c_b=1, λ=1, γ=0.5, δ=0.1, n=1000, ν_min=0.5 → ≈ 17.51."""
        params = make_params(m=2, L=2, gamma=0.5)

        e_st = ErrorBoundService.sampling_error_true(params, 1000, 0.5, DELTA)

        assert e_st == pytest.approx(80 * math.sqrt(8 * math.log(20) / 500))
        assert e_st == pytest.approx(17.51, abs=5e-3)

    @pytest.mark.parametrize(
        ("field", "low", "high"),
        [
            ("L", 1, 3),
            ("m", 2, 4),
            ("c_b", 0.5, 2.0),
            ("gamma", 0.3, 0.7),
        ],
    )
    def test_true_sampling_error_grows_with_game_size(self, field, low, high):
        """L, m, c_b, γ가 커지면 e_st는 엄격히 커진다."""
        base = {"m": 2, "L": 2, "gamma": 0.5}
        small = ErrorBoundService.sampling_error_true(
            make_params(**{**base, field: low}), 1000, 0.5, DELTA
        )
        large = ErrorBoundService.sampling_error_true(
            make_params(**{**base, field: high}), 1000, 0.5, DELTA
        )

        assert 0 < small < large

    def test_true_sampling_error_falls_with_n_and_coverage(self):
        """n과 ν_min이 커지면 e_st는 엄격히 작아진다."""
        params = make_params(m=2, L=2, gamma=0.5)
        by_n = [
            ErrorBoundService.sampling_error_true(params, n, 0.5, DELTA)
            for n in (10, 100, 1000, 10_000, 100_000)
        ]
        by_nu = [
            ErrorBoundService.sampling_error_true(params, 1000, nu, DELTA)
            for nu in (0.01, 0.1, 0.5, 1.0, 4.0)
        ]

        assert all(a > b for a, b in zip(by_n, by_n[1:]))
        assert all(a > b for a, b in zip(by_nu, by_nu[1:]))

    def test_projection_error_worked_value(self):
        """Φ = [[1],[1]], Q = [0, 2], γ = 0.6 → 1/0.8 = 1.25."""
        phi = np.array([[1.0], [1.0]])

        e_p = ErrorBoundService.projection_error(phi, np.array([0.0, 2.0]), 0.6)

        assert e_p == pytest.approx(1.25)

    def test_nonpositive_nu_min_rejected(self, small_params):
        """ν_min ≤ 0이면 DomainError."""
        with pytest.raises(DomainError):
            ErrorBoundService.sampling_error_true(small_params, 10, 0.0, DELTA)

    def test_projection_error_vanishes_in_span(self):
        """Q가 특징 공간 안에 있으면 e_p = 0."""
        phi = make_rng(3).normal(size=(30, 4))
        q = phi @ np.array([1.0, 0.5, -2.0, 0.25])

        assert ErrorBoundService.projection_error(phi, q, 0.5) == pytest.approx(
            0.0, abs=1e-9
        )

    def test_approx_sampling_error_without_kernel_gap(self, tiny_params):
        """Ĉ_P = 0이면 e_sa = ‖Π̂(reward_bound·1)‖₂/√n."""
        ds = make_dataset(
            [
                ((0, 0), 0, 0, 0.1, (1, 0), 0.2),
                ((1, 0), 1, 0, 0.1, (0, 0), 0.2),
                ((0, 1), 0, 1, 0.1, (0, 0), 0.2),
                ((1, 1), 1, 1, 0.1, (0, 1), 0.2),
                ((1, 1), 0, 0, 0.1, (1, 0), 0.2),
            ]
        )
        phi = PolicyEvaluationService.features_of(ds)

        e_sa = ErrorBoundService.sampling_error_approx(
            ds, phi, 0.0, tiny_params, DELTA
        )

        assert e_sa <= tiny_params.reward_bound + 1e-12


class TestEvaluationBound:
    """상한 ≥ 측정 오차."""

    def test_bound_report_fields(self, small_params):
        """보고서의 total은 세 항의 합이고 δ를 그대로 담는다."""
        ds, phi, _, _, _, q_on = _bound_scenario(small_params, seed=0, visits=50)

        report = ErrorBoundService.evaluation_bound(ds, phi, small_params, DELTA, q_on)

        assert report.total == pytest.approx(report.e_p + report.e_st + report.e_sa)
        assert report.delta == DELTA
        assert report.n == ds.n == 9 * 4 * 50
        assert report.nu_min > 0

    def test_bound_covers_measured_error(self, small_params):
        """전수 설계에서 측정 오차 ≤ e_p + e_st + e_sa."""
        ds, phi, _, result, _, q_on = _bound_scenario(
            small_params, seed=1, visits=100
        )

        report = ErrorBoundService.evaluation_bound(ds, phi, small_params, DELTA, q_on)
        measured = ErrorBoundService.measured_error(q_on, phi, result.theta)

        assert measured <= report.total

    @pytest.mark.slow
    def test_bound_holds_over_twenty_seeds(self, small_params):
        """삼중항당 500회 방문, 20개 시드 모두에서 상한이 성립한다."""
        for seed in range(20):
            ds, phi, _, result, _, q_on = _bound_scenario(
                small_params, seed=seed, visits=500
            )
            report = ErrorBoundService.evaluation_bound(
                ds, phi, small_params, DELTA, q_on
            )
            measured = ErrorBoundService.measured_error(q_on, phi, result.theta)
            assert measured <= report.total, f"seed {seed}"


class TestPointwiseChecks:
    """분해 부등식과 삼중항별 검사."""

    def test_decomposition_inequality(self, small_params):
        """무작위 β 평가에서 lhs ≤ rhs."""
        rng = make_rng(41)
        states = ExactSolverService(small_params).states
        for seed in range(10):
            beta = MixedPolicy.constant(
                states, float(rng.random()), Player.DEFENDER
            )
            ds, phi, beta, result, q_true, _ = _bound_scenario(
                small_params, seed=seed, visits=20, beta=beta
            )

            lhs, rhs = ErrorBoundService.decomposition_check(
                ds, phi, beta, result.theta, small_params, q_true
            )

            assert lhs <= rhs + 1e-9

    @pytest.mark.slow
    def test_decomposition_inequality_hundred_runs(self, small_params):
        """100회 무작위 평가 실행 모두에서 lhs ≤ rhs."""
        rng = make_rng(42)
        states = ExactSolverService(small_params).states
        for seed in range(100):
            mixes = rng.random(len(states))
            beta = MixedPolicy.from_array(
                states, np.column_stack([1 - mixes, mixes]), Player.DEFENDER
            )
            ds, phi, beta, result, q_true, _ = _bound_scenario(
                small_params, seed=seed, visits=20, beta=beta
            )

            lhs, rhs = ErrorBoundService.decomposition_check(
                ds, phi, beta, result.theta, small_params, q_true
            )

            assert lhs <= rhs + 1e-9, f"run {seed}"

    def test_pointwise_gap_check_holds_on_exhaustive_design(self, small_params):
        """모든 관측 삼중항에서 |T̂q̂ − Tq̂|가 허용 범위 안에 있다."""
        ds, _, beta, result, _, _ = _bound_scenario(small_params, seed=2, visits=100)
        c_p = ErrorBoundService.estimate_cp(ds, small_params, DELTA)

        check = ErrorBoundService.pointwise_gap_check(
            ds, result.theta, beta, small_params, c_p, DELTA
        )

        assert check.n_checked == 9 * 4
        assert check.holds
        assert check.max_ratio <= 1.0

    def test_reward_gap_rate_below_threshold(self, small_params):
        """바쁜 서버가 있는 상태에서 위반 비율 ≤ e⁻³ + 3σ."""
        n = 20_000
        ds = _sojourn_dataset((1, 0), n, small_params, seed=17)

        rate = ErrorBoundService.reward_gap_violation_rate(ds, small_params)

        p = math.exp(-3)
        assert rate <= p + 3 * math.sqrt(p * (1 - p) / n)

    @pytest.mark.slow
    def test_reward_gap_rate_large_sample(self, small_params):
        """10⁵ 샘플 규모의 위반 비율 검사."""
        n = 100_000
        for x in ((1, 0), (2, 1), (2, 2)):
            ds = _sojourn_dataset(x, n, small_params, seed=sum(x))
            rate = ErrorBoundService.reward_gap_violation_rate(ds, small_params)
            p = math.exp(-3)
            assert rate <= p + 3 * math.sqrt(p * (1 - p) / n)


class TestNearOptimality:
    """‖Q* − q̂‖∞와 2γε̂/(1−γ)²."""

    def test_equilibrium_policy_has_matching_errors(self, small_params):
        """β = β*이면 Q^β = Q*이므로 두 오차가 같다."""
        solver = ExactSolverService(small_params)
        solution = solver.shapley_value_iteration()
        ds, _, _, result, q_beta, _ = _bound_scenario(
            small_params, seed=3, visits=10, beta=solution.beta_star
        )

        check = ErrorBoundService.near_optimality_check(
            solution.q_star, q_beta, result.theta, ds, small_params
        )

        assert check.sup_error == pytest.approx(check.eps_hat, abs=1e-6)
        assert check.bound == pytest.approx(
            2 * 0.5 * check.eps_hat / (1 - 0.5) ** 2
        )
