"""Unit tests for FeatureService domain service."""

import numpy as np
import pytest

from app.common.exception import (
    DegenerateFeaturesError,
    DomainError,
    InsufficientDataError,
)
from app.common.utils.rng import make_rng
from app.game.domain.services import FeatureService
from app.game.domain.value_objects import StateSpace, all_joint_actions


class TestDelta:
    """δ 인덱스."""

    def test_successful_attack_marks_longest(self):
        """(1,0)이면 가장 긴 큐."""
        assert FeatureService.delta_index((1, 0), 1, 0) == 0

    def test_otherwise_marks_shortest(self):
        """그 외에는 가장 짧은 큐."""
        assert FeatureService.delta_index((1, 0), 0, 0) == 1
        assert FeatureService.delta_index((1, 0), 1, 1) == 1

    def test_ties_pick_lowest_index(self):
        """동점이면 가장 낮은 인덱스."""
        assert FeatureService.delta_index((1, 1), 0, 0) == 0
        assert FeatureService.delta_index((2, 2, 2), 1, 0) == 0

    def test_delta_is_one_hot(self):
        """δ는 정확히 한 성분만 1이다."""
        x = (3, 1, 1)
        for action in all_joint_actions():
            total = sum(
                FeatureService.delta(x, action.a, action.b, i) for i in range(3)
            )
            assert total == 1

    def test_delta_index_out_of_range(self):
        """서버 인덱스가 범위를 벗어나면 DomainError."""
        with pytest.raises(DomainError):
            FeatureService.delta((1, 0), 0, 0, 2)


class TestFeatureVector:
    """특징 벡터와 행렬."""

    def test_attacked_feature(self, tiny_params):
        """공격 성공 시 가장 긴 큐에 1을 더해 제곱한다."""
        phi = FeatureService.feature_vector((1, 0), 1, 0, tiny_params)

        assert phi.tolist() == [4.0, 0.0, 1.0, 0.0]

    def test_defended_feature(self, tiny_params):
        """방어 시 가장 짧은 큐에 1을 더한다."""
        phi = FeatureService.feature_vector((1, 0), 0, 1, tiny_params)

        assert phi.tolist() == [1.0, 1.0, 0.0, 1.0]

    def test_length_is_d(self, small_params):
        """길이는 d = m + 2."""
        assert FeatureService.feature_vector((0, 2), 1, 1, small_params).shape == (
            small_params.d,
        )

    def test_matrix_rows_match_vectors(self, small_params):
        """feature_matrix의 각 행이 feature_vector와 같다."""
        space = StateSpace.enumerate(small_params, cap=100)
        xs = np.repeat(space.as_array(), 4, axis=0)
        a = np.tile([0, 0, 1, 1], len(space))
        b = np.tile([0, 1, 0, 1], len(space))

        phi = FeatureService.feature_matrix(xs, a, b)

        for k in range(len(xs)):
            assert phi[k].tolist() == FeatureService.feature_vector(
                tuple(xs[k]), a[k], b[k], small_params
            ).tolist()

    def test_q_matrices_match_q_hat(self, small_params):
        """q_matrices는 q_hat의 상태별 2x2 표다."""
        theta = np.array([0.5, -1.0, 2.0, 3.0])
        space = StateSpace.enumerate(small_params, cap=100)

        tables = FeatureService.q_matrices(space.as_array(), theta)

        for i, x in enumerate(space.states):
            for action in all_joint_actions():
                assert tables[i, action.a, action.b] == pytest.approx(
                    FeatureService.q_hat(x, action.a, action.b, theta, small_params)
                )

    def test_theta_length_checked(self, tiny_params):
        """θ 길이가 d가 아니면 DomainError."""
        with pytest.raises(DomainError):
            FeatureService.q_hat((0, 0), 0, 0, np.zeros(3), tiny_params)


class TestSigmaNorm:
    """σ-노름."""

    def test_value(self):
        """sqrt(mean(y²))."""
        assert FeatureService.sigma_norm(np.array([3.0, 4.0])) == pytest.approx(
            np.sqrt(12.5)
        )

    def test_empty_vector(self):
        """빈 벡터는 DomainError."""
        with pytest.raises(DomainError):
            FeatureService.sigma_norm(np.array([]))


class TestProjection:
    """투영 Π̂의 항등식."""

    def test_projection_identities(self):
        """비확장성, 멱등성, 피타고라스 항등식이 1e-9 안에서 성립한다."""
        rng = make_rng(31)
        for _ in range(1000):
            n = int(rng.integers(1, 201))
            d = int(rng.integers(1, 7))
            phi = rng.normal(size=(n, d))
            if rng.random() < 0.2 and d > 1:
                phi[:, -1] = phi[:, 0]
            y = rng.normal(size=n)
            z = rng.normal(size=n)

            py = FeatureService.project(phi, y)
            pz = FeatureService.project(phi, z)

            assert FeatureService.sigma_norm(py - pz) <= (
                FeatureService.sigma_norm(y - z) + 1e-9
            )
            assert np.allclose(FeatureService.project(phi, py), py, atol=1e-9)
            lhs = FeatureService.sigma_norm(y) ** 2
            rhs = (
                FeatureService.sigma_norm(py) ** 2
                + FeatureService.sigma_norm(y - py) ** 2
            )
            assert abs(lhs - rhs) <= 1e-9 * max(1.0, lhs)

    def test_vector_in_span_is_fixed(self):
        """열공간 안의 벡터는 그대로 남는다."""
        phi = make_rng(1).normal(size=(20, 3))
        y = phi @ np.array([1.0, -2.0, 0.5])

        assert np.allclose(FeatureService.project(phi, y), y)


class TestGramMinEig:
    """Gram 행렬의 최소 양의 고유값."""

    def test_orthonormal_columns(self):
        """직교 열은 고유값이 모두 같다."""
        phi = np.sqrt(4.0) * np.eye(4)

        assert FeatureService.gram_min_eig(phi) == pytest.approx(1.0)

    def test_ignores_zero_directions(self):
        """0 고유값은 무시하고 가장 작은 양의 값을 돌려준다."""
        phi = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 0.0]])

        assert FeatureService.gram_min_eig(phi) == pytest.approx(2.0 / 3.0)

    def test_too_few_samples(self):
        """n < d이면 InsufficientDataError."""
        with pytest.raises(InsufficientDataError):
            FeatureService.gram_min_eig(np.ones((2, 4)))

    def test_all_zero_features(self):
        """모든 특징이 0이면 DegenerateFeaturesError."""
        with pytest.raises(DegenerateFeaturesError) as exc_info:
            FeatureService.gram_min_eig(np.zeros((10, 4)))

        assert exc_info.value.exit_code == 3
