"""Matrix Game Domain Service.

상태별 2x2 영합 행렬 게임 g[a][b]의 정확한 해를 구합니다.
행은 공격자 행동 a(최대화), 열은 방어자 행동 b(최소화)입니다.
행동 집합이 {0, 1}로 고정되어 있으므로 선형계획 대신 닫힌 형태를 사용합니다.
"""

import numpy as np

from app.common.exception import DomainError
from app.game.domain.value_objects import GameSolution

SADDLE_TOL = 1e-12


class MatrixGameService:
    """2x2 영합 게임 풀이 서비스.

    동점인 순수 전략은 항상 가장 낮은 행동 인덱스를 고릅니다.
    """

    @staticmethod
    def solve_defender_batch(
        games: np.ndarray,
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """K개의 2x2 게임을 한 번에 푼다.

        Args:
            games: shape (K, 2, 2), games[k, a, b]

        Returns:
            (values (K,), defender_mixes (K, 2), attacker_mixes (K, 2))

        Raises:
            DomainError: NaN 또는 무한대 항목이 있는 경우
        """
        g = np.asarray(games, dtype=float)
        if g.ndim != 3 or g.shape[1:] != (2, 2):
            raise DomainError(message=f"Expected (K, 2, 2) games, got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise DomainError(message="Matrix game entries must be finite")

        column_max = g.max(axis=1)
        upper = column_max.min(axis=1)
        b_star = column_max.argmin(axis=1)
        row_min = g.min(axis=2)
        lower = row_min.max(axis=1)
        a_star = row_min.argmax(axis=1)

        saddle = upper - lower <= SADDLE_TOL * (1.0 + np.abs(upper))
        k = g.shape[0]
        values = upper.copy()
        defender = np.zeros((k, 2))
        attacker = np.zeros((k, 2))
        defender[np.arange(k), b_star] = 1.0
        attacker[np.arange(k), a_star] = 1.0

        mixed = ~saddle
        if np.any(mixed):
            gm = g[mixed]
            g00, g01 = gm[:, 0, 0], gm[:, 0, 1]
            g10, g11 = gm[:, 1, 0], gm[:, 1, 1]
            det = g00 - g01 - g10 + g11
            beta0 = np.clip((g11 - g01) / det, 0.0, 1.0)
            alpha0 = np.clip((g11 - g10) / det, 0.0, 1.0)
            values[mixed] = (g00 * g11 - g01 * g10) / det
            defender[mixed] = np.stack([beta0, 1.0 - beta0], axis=1)
            attacker[mixed] = np.stack([alpha0, 1.0 - alpha0], axis=1)

        return values, defender, attacker

    @staticmethod
    def solve_defender(g: np.ndarray) -> GameSolution:
        """min_β max_a Σ_b β(b)·g[a][b]의 값과 최적 방어자 혼합 전략.

        순수 안장점이 있으면 그 열을, 없으면 유일한 완전 혼합 균형을 반환합니다.
        """
        values, defender, attacker = MatrixGameService.solve_defender_batch(
            np.asarray(g, dtype=float)[None]
        )
        return GameSolution(
            value=float(values[0]),
            defender_mix=(float(defender[0, 0]), float(defender[0, 1])),
            attacker_mix=(float(attacker[0, 0]), float(attacker[0, 1])),
        )

    @staticmethod
    def solve_attacker(g: np.ndarray) -> GameSolution:
        """max_α min_b Σ_a α(a)·g[a][b]의 값과 최적 공격자 혼합 전략.

        역할을 바꾼 게임 −gᵀ를 방어자 관점에서 풀어 구합니다.
        """
        g = np.asarray(g, dtype=float)
        if g.shape != (2, 2):
            raise DomainError(message=f"Expected a 2x2 game, got {g.shape}")
        dual = MatrixGameService.solve_defender(-g.T)
        return GameSolution(
            value=-dual.value,
            defender_mix=dual.attacker_mix,
            attacker_mix=dual.defender_mix,
        )

    @staticmethod
    def brute_force_value(g: np.ndarray, grid_step: float) -> float:
        """β₀ 격자 탐색으로 구한 minimax 값 (테스트 오라클).

        Args:
            g: 2x2 행렬
            grid_step: 격자 간격, 0 < grid_step ≤ 0.01
        """
        if not 0.0 < grid_step <= 0.01:
            raise DomainError(message=f"grid_step must be in (0, 0.01]: {grid_step}")
        g = np.asarray(g, dtype=float)
        beta0 = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
        payoff = beta0[:, None] * g[None, :, 0] + (1.0 - beta0[:, None]) * g[
            None, :, 1
        ]
        return float(payoff.max(axis=1).min())
