"""Minimax LSPI training loop.

Outer iteration: collect a fresh trajectory under the current defender policy
(ε-greedy on both players' realized actions), evaluate that policy by
fitted-Q iteration, improve it by solving the per-state 2x2 game of the
learned q̂, and stop once the weight vector stops moving.
"""

import logging
import math

import numpy as np

from app.common.exception import DomainError, NumericalDivergenceError
from app.common.utils.rng import make_rng
from app.game.application.services.attacker_models import (
    AttackerModel,
    epsilon_greedy,
    exploration_rate,
)
from app.game.application.services.policy_evaluation_service import (
    PolicyEvaluationService,
)
from app.game.domain.entities import Dataset
from app.game.domain.services import FeatureService, MatrixGameService
from app.game.domain.services import QueueDynamicsService as Dynamics
from app.game.domain.value_objects import (
    ALL_JOINT_ACTIONS,
    GameParams,
    InitialStateDistribution,
    IterationDiagnostics,
    MixedPolicy,
    Player,
    State,
    StateSpace,
    TrainConfig,
    TrainReport,
)

logger = logging.getLogger(__name__)

# rng stream ids under the configured seed
COLLECTION_STREAM = 0
ROLLOUT_STREAM = 1
EXHAUSTIVE_STREAM = 2


def improve_policy(
    theta: np.ndarray, states: tuple[State, ...], params: GameParams
) -> MixedPolicy:
    """상태별 g[a][b] = q̂(x,a,b;θ) 게임의 최적 방어자 혼합 전략."""
    theta = FeatureService.check_theta(theta, params)
    xs = np.array(states, dtype=np.int64).reshape(-1, params.m)
    _, defender, _ = MatrixGameService.solve_defender_batch(
        FeatureService.q_matrices(xs, theta)
    )
    return MixedPolicy.from_array(states, defender, Player.DEFENDER)


def collect(
    beta: MixedPolicy,
    attacker: AttackerModel,
    n: int,
    eps_schedule: tuple[float, float, float],
    params: GameParams,
    rng: np.random.Generator,
    x0_dist: InitialStateDistribution,
    t0: int = 0,
    explore_attacker: bool = False,
) -> tuple[Dataset, int]:
    """x₀ ~ x0_dist에서 시작하는 n 스텝 궤적 하나를 수집한다.

    Args:
        eps_schedule: (eps0, eps_decay, eps_min)
        t0: 탐험 스텝 카운터의 시작값
        explore_attacker: 참이면 공격자 모델의 행동도 확률 ε_t로 {0, 1} 균등
            행동으로 바꾼다

    Returns:
        (고정된 데이터셋, 다음 스텝 카운터)
    """
    if n < 1:
        raise DomainError(message="n must be at least 1")
    eps0, eps_decay, eps_min = eps_schedule
    xs = np.empty((n, params.m), dtype=np.int64)
    a_col = np.empty(n, dtype=np.int64)
    b_col = np.empty(n, dtype=np.int64)
    r_col = np.empty(n)
    next_col = np.empty((n, params.m), dtype=np.int64)
    dt_col = np.empty(n)

    x = x0_dist.sample(params, rng)
    t = t0
    for k in range(n):
        eps = exploration_rate(t, eps0, eps_decay, eps_min)
        b = epsilon_greedy(beta.at(x), eps, rng)
        a = attacker.act(x, rng)
        if explore_attacker:
            a = epsilon_greedy((1.0 - a, float(a)), eps, rng)
        x_next, dt = Dynamics.sample_transition(x, a, b, params, rng)
        xs[k], a_col[k], b_col[k] = x, a, b
        r_col[k] = Dynamics.realized_reward(x, a, b, dt, params)
        next_col[k], dt_col[k] = x_next, dt
        x = x_next
        t += 1
    ds = Dataset(xs=xs, a=a_col, b=b_col, r=r_col, x_next=next_col, dt=dt_col)
    return ds, t


def collect_exhaustive(
    params: GameParams,
    space: StateSpace,
    visits_per_triple: int,
    rng: np.random.Generator,
) -> Dataset:
    """모든 (x, a, b)를 정확히 visits_per_triple번씩 생성 모델에서 샘플링한다.

    생성 순서는 상태 → 행동 쌍 → 방문 순이며, 마지막에 rng로 섞습니다.
    """
    if visits_per_triple < 1:
        raise DomainError(message="visits_per_triple must be at least 1")
    rows = []
    for x in space.states:
        for action in ALL_JOINT_ACTIONS:
            for _ in range(visits_per_triple):
                y, dt = Dynamics.sample_transition(
                    x, action.a, action.b, params, rng
                )
                r = Dynamics.realized_reward(x, action.a, action.b, dt, params)
                rows.append((x, action.a, action.b, r, y, dt))
    order = rng.permutation(len(rows))
    rows = [rows[i] for i in order]
    return Dataset(
        xs=np.array([row[0] for row in rows]),
        a=np.array([row[1] for row in rows]),
        b=np.array([row[2] for row in rows]),
        r=np.array([row[3] for row in rows]),
        x_next=np.array([row[4] for row in rows]),
        dt=np.array([row[5] for row in rows]),
    )


def rollout_horizon(params: GameParams, truncation_error: float) -> int:
    """γ^H·q_max < truncation_error 를 만족하는 가장 작은 H (최소 1)."""
    if truncation_error <= 0:
        raise DomainError(message="truncation_error must be positive")
    if params.gamma == 0.0 or truncation_error > params.q_max:
        return 1
    ratio = math.log(truncation_error / params.q_max) / math.log(params.gamma)
    return max(1, math.floor(ratio) + 1)


def evaluate_policy_rollout(
    beta: MixedPolicy,
    attacker: AttackerModel,
    horizon: int,
    n_rollouts: int,
    params: GameParams,
    seed: int,
    x0_dist: InitialStateDistribution | None = None,
) -> tuple[float, float]:
    """Σ_k γ^k r_k의 몬테카를로 평균과 표준오차.

    롤아웃마다 (seed, ROLLOUT_STREAM, i)에서 유도한 독립 스트림을 사용합니다.
    """
    if n_rollouts < 2:
        raise DomainError(message="n_rollouts must be at least 2")
    x0_dist = x0_dist or InitialStateDistribution()
    attacker.begin_iteration(beta)
    returns = np.empty(n_rollouts)
    for i in range(n_rollouts):
        rng = make_rng(seed, ROLLOUT_STREAM, i)
        x = x0_dist.sample(params, rng)
        total, discount = 0.0, 1.0
        for _ in range(horizon):
            b = epsilon_greedy(beta.at(x), 0.0, rng)
            a = attacker.act(x, rng)
            x_next, dt = Dynamics.sample_transition(x, a, b, params, rng)
            total += discount * Dynamics.realized_reward(x, a, b, dt, params)
            discount *= params.gamma
            x = x_next
        returns[i] = total
    mean = float(returns.mean())
    stderr = float(returns.std(ddof=1) / math.sqrt(n_rollouts))
    return mean, stderr


class MinimaxLSPITrainer:
    """Minimax LSPI 학습기.

    같은 TrainConfig(시드 포함)는 항상 같은 TrainReport를 만듭니다.
    """

    def __init__(self, space: StateSpace):
        self._space = space

    def train(self, cfg: TrainConfig, attacker: AttackerModel) -> TrainReport:
        """collect → evaluate → improve를 ‖θ_{k+1} − θ_k‖ < theta_tol 까지 반복.

        Raises:
            NumericalDivergenceError: 평가 발산 (외부 반복 번호와 부분 보고서 포함)
        """
        params = cfg.params
        states = self._space.states
        rng = make_rng(cfg.seed, COLLECTION_STREAM)
        schedule = (cfg.eps0, cfg.eps_decay, cfg.eps_min)

        theta = np.zeros(params.d)
        beta = improve_policy(theta, states, params)
        trace: list[tuple[float, ...]] = []
        diagnostics: list[IterationDiagnostics] = []
        converged = False
        t = 0

        for k in range(cfg.max_outer_iters):
            if cfg.reset_exploration:
                t = 0
            attacker.begin_iteration(beta)
            ds, t = collect(
                beta,
                attacker,
                cfg.n,
                schedule,
                params,
                rng,
                cfg.initial_state,
                t0=t,
                explore_attacker=cfg.explore_attacker,
            )
            try:
                result = PolicyEvaluationService.evaluate_policy(
                    ds,
                    beta,
                    params,
                    tol=cfg.eval_tol,
                    max_iter=cfg.eval_max_iter,
                    theta0=theta,
                )
            except NumericalDivergenceError as exc:
                raise NumericalDivergenceError(
                    message=f"Outer iteration {k}: {exc.message}",
                    iteration=k,
                    partial_report=TrainReport(
                        theta_trace=tuple(trace),
                        beta_final=beta,
                        converged=False,
                        diagnostics=tuple(diagnostics),
                    ),
                ) from exc

            change = float(np.linalg.norm(result.theta - theta))
            theta = result.theta
            beta = improve_policy(theta, states, params)
            trace.append(tuple(float(v) for v in theta))
            diagnostics.append(
                IterationDiagnostics(
                    iteration=k,
                    theta=trace[-1],
                    td_error=result.td_error,
                    exploration_rate=exploration_rate(
                        t - 1, cfg.eps0, cfg.eps_decay, cfg.eps_min
                    ),
                    dataset_size=ds.n,
                    inner_iterations=result.iterations,
                    inner_converged=result.converged,
                    theta_change=change,
                )
            )
            logger.info(
                "Outer iteration %d: |dtheta|=%.3e td_error=%.3e inner=%d",
                k,
                change,
                result.td_error,
                result.iterations,
            )
            attacker.end_iteration(ds)
            if change < cfg.theta_tol:
                converged = True
                break

        logger.info(
            "Training %s after %d outer iterations",
            "converged" if converged else "stopped",
            len(trace),
        )
        return TrainReport(
            theta_trace=tuple(trace),
            beta_final=beta,
            converged=converged,
            diagnostics=tuple(diagnostics),
        )
