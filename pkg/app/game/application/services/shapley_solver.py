"""Exact Shapley oracle over the enumerated state space.

Builds the embedded-chain kernel once as sparse matrices P[a][b] and the
expected reward table R[x, a, b], then answers equilibrium, policy-value and
best-response questions by value iteration or direct sparse solves.
"""

import logging

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from app.common.exception import ConvergenceError
from app.game.domain.services import MatrixGameService, QueueDynamicsService
from app.game.domain.value_objects import (
    BestResponse,
    GameParams,
    MixedPolicy,
    Player,
    QTable,
    ShapleySolution,
    StateSpace,
)
from config.settings import settings

logger = logging.getLogger(__name__)


class ExactSolverService:
    """전체 상태 공간에 대한 정확 해법 서비스.

    상태 공간 크기가 cap을 넘으면 생성 시 CapacityExceededError가 발생합니다.
    """

    def __init__(
        self,
        params: GameParams,
        cap: int | None = None,
        tol: float | None = None,
        max_iter: int | None = None,
    ):
        self.params = params
        self.tol = settings.shapley_tol if tol is None else tol
        self.max_iter = (
            settings.shapley_max_iter if max_iter is None else max_iter
        )
        self.space = self.enumerate_states(
            params, settings.state_space_cap if cap is None else cap
        )
        self.rewards = QueueDynamicsService.reward_matrices(
            self.space.as_array(), params
        )
        self.kernel = self._build_kernel()

    @staticmethod
    def enumerate_states(params: GameParams, cap: int) -> StateSpace:
        """사전식 순서의 상태 공간 (L+1)^m."""
        return StateSpace.enumerate(params, cap)

    @property
    def states(self):
        return self.space.states

    def _build_kernel(self) -> list[list[scipy.sparse.csr_matrix]]:
        size = len(self.space)
        kernel = []
        for a in (0, 1):
            row = []
            for b in (0, 1):
                rows, cols, probs = [], [], []
                for i, x in enumerate(self.space.states):
                    dist = QueueDynamicsService.transition_distribution(
                        x, a, b, self.params
                    )
                    for y, p in dist.outcomes:
                        rows.append(i)
                        cols.append(self.space.index_of(y))
                        probs.append(p)
                row.append(
                    scipy.sparse.csr_matrix(
                        (probs, (rows, cols)), shape=(size, size)
                    )
                )
            kernel.append(row)
        return kernel

    def expected_next(self, v: np.ndarray) -> np.ndarray:
        """Σ_{x′} p(x′|x,a,b)·v(x′), shape (S, 2, 2)."""
        out = np.empty((len(self.space), 2, 2))
        for a in (0, 1):
            for b in (0, 1):
                out[:, a, b] = self.kernel[a][b] @ v
        return out

    def backup(self, v: np.ndarray) -> np.ndarray:
        """q = R + γ·P·v."""
        return self.rewards + self.params.gamma * self.expected_next(v)

    # === Equilibrium ===

    def shapley_value_iteration(self) -> ShapleySolution:
        """q_{j+1} = R + γ·P·val(q_j)를 sup-norm 변화량이 tol 미만이 될 때까지 반복.

        Returns:
            q*, v*, 상태별 균형 혼합 전략, 스윕별 변화량 기록

        Raises:
            ConvergenceError: max_iter 안에 수렴하지 않은 경우
        """
        q = self.rewards.copy()
        trace: list[float] = []
        for sweep in range(1, self.max_iter + 1):
            values, _, _ = MatrixGameService.solve_defender_batch(q)
            q_next = self.backup(values)
            change = float(np.max(np.abs(q_next - q)))
            trace.append(change)
            q = q_next
            if sweep % 100 == 0:
                logger.debug("Shapley sweep %d: change %.3e", sweep, change)
            if change < self.tol:
                break
        else:
            raise ConvergenceError(
                message=(
                    f"Shapley value iteration did not reach tol {self.tol} "
                    f"within {self.max_iter} sweeps"
                ),
                extra={"last_change": trace[-1]},
            )

        values, defender, attacker = MatrixGameService.solve_defender_batch(q)
        residual = float(np.max(np.abs(q - self.backup(values))))
        logger.info(
            "Shapley value iteration converged after %d sweeps "
            "(residual %.3e)",
            len(trace),
            residual,
        )
        return ShapleySolution(
            q_star=QTable(space=self.space, values=q),
            v_star=values,
            alpha_star=MixedPolicy.from_array(
                self.states, attacker, Player.ATTACKER
            ),
            beta_star=MixedPolicy.from_array(
                self.states, defender, Player.DEFENDER
            ),
            iterations=len(trace),
            delta_trace=tuple(trace),
            bellman_residual=residual,
        )

    # === Fixed policy pairs ===

    def _averaged_kernel(
        self, alpha: np.ndarray, beta: np.ndarray
    ) -> tuple[np.ndarray, scipy.sparse.csr_matrix]:
        size = len(self.space)
        r = np.einsum("sa,sb,sab->s", alpha, beta, self.rewards)
        p = scipy.sparse.csr_matrix((size, size))
        for a in (0, 1):
            for b in (0, 1):
                p = p + scipy.sparse.diags(alpha[:, a] * beta[:, b]) @ (
                    self.kernel[a][b]
                )
        return r, p.tocsr()

    def policy_value(self, alpha: MixedPolicy, beta: MixedPolicy) -> QTable:
        """고정된 정책 쌍의 행동 가치 q_{α,β} = R + γ·P·v_{α,β}.

        v_{α,β}는 (I − γP_{α,β})v = r_{α,β}의 직접 희소 풀이로 구합니다.
        """
        r, p = self._averaged_kernel(
            alpha.as_array(self.states), beta.as_array(self.states)
        )
        system = scipy.sparse.identity(len(self.space), format="csc") - (
            self.params.gamma * p
        ).tocsc()
        v = np.atleast_1d(scipy.sparse.linalg.spsolve(system, r))
        if not np.all(np.isfinite(v)):
            raise ConvergenceError(message="Policy evaluation system is singular")
        return QTable(space=self.space, values=self.backup(v))

    # === Best responses ===

    def _best_response(
        self, opponent: np.ndarray, player: Player
    ) -> tuple[np.ndarray, np.ndarray, int]:
        # opponent: (S, 2) mix of the fixed player
        weight = [scipy.sparse.diags(opponent[:, k]) for k in (0, 1)]
        if player == Player.ATTACKER:
            r = np.einsum("sb,sab->sa", opponent, self.rewards)
            kernels = [
                (
                    weight[0] @ self.kernel[a][0]
                    + weight[1] @ self.kernel[a][1]
                ).tocsr()
                for a in (0, 1)
            ]
            pick = np.argmax
        else:
            r = np.einsum("sa,sab->sb", opponent, self.rewards)
            kernels = [
                (
                    weight[0] @ self.kernel[0][b]
                    + weight[1] @ self.kernel[1][b]
                ).tocsr()
                for b in (0, 1)
            ]
            pick = np.argmin

        v = np.zeros(len(self.space))
        for sweep in range(1, self.max_iter + 1):
            q = r + self.params.gamma * np.stack(
                [kernels[0] @ v, kernels[1] @ v], axis=1
            )
            greedy = pick(q, axis=1)
            v_next = q[np.arange(len(v)), greedy]
            change = float(np.max(np.abs(v_next - v)))
            v = v_next
            if change < self.tol:
                return v, greedy, sweep
        raise ConvergenceError(
            message=f"Best-response iteration did not converge in {self.max_iter} sweeps"
        )

    def best_response_value(self, beta: MixedPolicy) -> BestResponse:
        """방어자가 β로 고정되었을 때 공격자의 최적 대응과 그 가치."""
        v, greedy, sweeps = self._best_response(
            beta.as_array(self.states), Player.ATTACKER
        )
        return BestResponse(
            policy=MixedPolicy.from_array(
                self.states, np.eye(2)[greedy], Player.ATTACKER
            ),
            v=v,
            iterations=sweeps,
        )

    def defender_best_response_value(self, alpha: MixedPolicy) -> BestResponse:
        """공격자가 α로 고정되었을 때 방어자의 최적 대응(최소화)과 그 가치."""
        v, greedy, sweeps = self._best_response(
            alpha.as_array(self.states), Player.DEFENDER
        )
        return BestResponse(
            policy=MixedPolicy.from_array(
                self.states, np.eye(2)[greedy], Player.DEFENDER
            ),
            v=v,
            iterations=sweeps,
        )

    def best_response_q(self, beta: MixedPolicy) -> QTable:
        """β에 대해 최적 대응하는 공격자를 가정한 행동 가치 Q^β.

        T_β의 고정점으로, 오차 상한의 참 Q로 사용됩니다.
        """
        response = self.best_response_value(beta)
        return QTable(space=self.space, values=self.backup(response.v))

    def exploitability(self, beta: MixedPolicy, v_star: np.ndarray) -> float:
        """sup_x (v_BR(β)(x) − v*(x))."""
        response = self.best_response_value(beta)
        return float(np.max(response.v - v_star))
