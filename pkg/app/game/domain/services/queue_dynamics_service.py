"""Queue Dynamics Domain Service.

병렬 큐 보안 게임의 연속시간 동역학과 그 임베디드(jump) 체인을 다루는
순수 도메인 서비스입니다. 상태는 서버별 작업 수 튜플이며, 서버 인덱스는
0부터 시작합니다.
"""

from collections import defaultdict

import numpy as np

from app.game.domain.value_objects import (
    GameParams,
    RouteTarget,
    State,
    TransitionDistribution,
    validate_state,
)


class QueueDynamicsService:
    """큐 동역학 서비스.

    보상률, 체류 시간, 라우팅, 전이 커널 및 샘플링을 처리합니다.
    모든 메서드는 @staticmethod로 순수 함수로 구현됩니다.
    """

    @staticmethod
    def instantaneous_reward(
        x: State, a: int, b: int, params: GameParams
    ) -> float:
        """순간 보상률 ρ = ‖x‖₁ − c_a·a + c_b·b.

        방어자의 비용률이자 공격자의 보상률입니다.

        Raises:
            DomainError: 상태 성분이 범위를 벗어난 경우
        """
        x = validate_state(x, params)
        return float(sum(x)) - params.c_a * a + params.c_b * b

    @staticmethod
    def active_servers(x: State) -> int:
        """작업이 있는 서버 수 k(x)."""
        return sum(1 for v in x if v > 0)

    @staticmethod
    def total_rate(x: State, params: GameParams) -> float:
        """경쟁 지수 분포의 총 발생률 Λ = λ + k(x)·μ."""
        return params.lam + QueueDynamicsService.active_servers(x) * params.mu

    @staticmethod
    def expected_sojourn(x: State, params: GameParams) -> float:
        """기대 체류 시간 E[Δt] = 1/(λ + k(x)·μ)."""
        return 1.0 / QueueDynamicsService.total_rate(x, params)

    @staticmethod
    def expected_reward(
        x: State, a: int, b: int, params: GameParams
    ) -> float:
        """임베디드 체인의 한 스텝 보상 r(x,a,b) = ρ·E[Δt]."""
        return QueueDynamicsService.instantaneous_reward(
            x, a, b, params
        ) * QueueDynamicsService.expected_sojourn(x, params)

    @staticmethod
    def realized_reward(
        x: State, a: int, b: int, dt: float, params: GameParams
    ) -> float:
        """샘플된 체류 시간으로 실현된 보상 ρ·Δt."""
        return QueueDynamicsService.instantaneous_reward(x, a, b, params) * dt

    @staticmethod
    def route_target(x: State, a: int, b: int, params: GameParams) -> RouteTarget:
        """도착 작업의 목적지.

        공격이 성공한 경우((a,b)=(1,0)) 가장 긴 큐, 그 외에는 가장 짧은 큐로
        라우팅됩니다. 목적지가 가득 차 있으면 거부됩니다. 동점이면 후보 전체를
        반환하고 무작위 선택은 호출자가 합니다.
        """
        target_value = max(x) if (a, b) == (1, 0) else min(x)
        if target_value >= params.L:
            return RouteTarget.reject()
        return RouteTarget(
            servers=tuple(i for i, v in enumerate(x) if v == target_value)
        )

    @staticmethod
    def transition_distribution(
        x: State, a: int, b: int, params: GameParams
    ) -> TransitionDistribution:
        """한 스텝 전이 분포 p(·|x,a,b).

        도착은 λ/Λ 확률로 라우팅 목적지에 나뉘어 들어가고(거부 시 자기 루프),
        작업이 있는 각 서버는 μ/Λ 확률로 작업 하나를 끝냅니다.
        """
        x = validate_state(x, params)
        rate = QueueDynamicsService.total_rate(x, params)
        outcomes: dict[State, float] = defaultdict(float)

        target = QueueDynamicsService.route_target(x, a, b, params)
        p_arrival = params.lam / rate
        if target.is_rejected:
            outcomes[x] += p_arrival
        else:
            share = p_arrival / len(target.servers)
            for i in target.servers:
                outcomes[_shift(x, i, +1)] += share

        p_departure = params.mu / rate
        for i, v in enumerate(x):
            if v > 0:
                outcomes[_shift(x, i, -1)] += p_departure

        return TransitionDistribution(outcomes=tuple(sorted(outcomes.items())))

    @staticmethod
    def sample_transition(
        x: State,
        a: int,
        b: int,
        params: GameParams,
        rng: np.random.Generator,
    ) -> tuple[State, float]:
        """다음 상태와 체류 시간 Δt ~ Exp(Λ)를 샘플링한다."""
        x = validate_state(x, params)
        rate = QueueDynamicsService.total_rate(x, params)
        dt = float(rng.exponential(1.0 / rate))

        event = rng.random() * rate
        if event < params.lam:
            target = QueueDynamicsService.route_target(x, a, b, params)
            if target.is_rejected:
                return x, dt
            i = target.servers[int(rng.integers(len(target.servers)))]
            return _shift(x, i, +1), dt

        active = [i for i, v in enumerate(x) if v > 0]
        slot = min(int((event - params.lam) / params.mu), len(active) - 1)
        return _shift(x, active[slot], -1), dt

    # === Vectorized helpers over state arrays ===

    @staticmethod
    def reward_matrices(xs: np.ndarray, params: GameParams) -> np.ndarray:
        """(S, m) 상태 배열에 대한 기대 보상 r(x,a,b), shape (S, 2, 2)."""
        xs = np.asarray(xs)
        load = xs.sum(axis=1).astype(float)
        sojourn = 1.0 / (params.lam + (xs > 0).sum(axis=1) * params.mu)
        a = np.array([0.0, 1.0])[None, :, None]
        b = np.array([0.0, 1.0])[None, None, :]
        rho = load[:, None, None] - params.c_a * a + params.c_b * b
        return rho * sojourn[:, None, None]

    @staticmethod
    def expected_sojourns(xs: np.ndarray, params: GameParams) -> np.ndarray:
        return 1.0 / (params.lam + (np.asarray(xs) > 0).sum(axis=1) * params.mu)


def _shift(x: State, i: int, step: int) -> State:
    return x[:i] + (x[i] + step,) + x[i + 1 :]
