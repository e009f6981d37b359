"""File record ↔ Domain object mappers.

JSON/NDJSON 레코드와 도메인 객체 간 변환을 담당합니다.
인프라 레이어에서만 사용되며, 도메인 레이어는 파일 포맷에 대해 알지 못합니다.
"""

from typing import Any

import numpy as np

from app.common.exception import ConfigError
from app.game.domain.entities import Dataset, Sample
from app.game.domain.value_objects import (
    BoundReport,
    GameParams,
    MixedPolicy,
    Player,
    QTable,
    ShapleySolution,
    TrainReport,
    parse_state_key,
    state_key,
)

TRACE_COLUMNS = (
    "td_error",
    "exploration_rate",
    "dataset_size",
    "inner_iterations",
    "inner_converged",
)


class PolicyMapper:
    """MixedPolicy ↔ {"player": ..., "states": {"i,j": [p0, p1]}}."""

    @staticmethod
    def to_dict(policy: MixedPolicy) -> dict:
        return {
            "player": policy.player.value,
            "states": {
                state_key(x): [float(p0), float(p1)]
                for x, (p0, p1) in policy.probs.items()
            },
        }

    @staticmethod
    def to_entity(record: Any) -> MixedPolicy:
        """정책 레코드를 도메인 객체로 변환.

        Raises:
            ConfigError: 형식이 잘못된 정책 파일
        """
        try:
            player = Player(record["player"])
            states = record["states"]
            if any(len(mix) != 2 for mix in states.values()):
                raise ValueError("each mix must have two entries")
            probs = {
                parse_state_key(key): (float(mix[0]), float(mix[1]))
                for key, mix in states.items()
            }
            return MixedPolicy(player=player, probs=probs)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ConfigError(message=f"Malformed policy file: {exc}") from exc


class QTableMapper:
    """QTable → {"m", "L", "states": ["i,j", ...], "q": [[[q00, q01], [q10, q11]], ...]}."""

    @staticmethod
    def to_dict(table: QTable) -> dict:
        return {
            "m": table.space.m,
            "L": table.space.L,
            "states": [state_key(x) for x in table.states],
            "q": table.values.tolist(),
        }


class SampleMapper:
    """Sample ↔ NDJSON 레코드 (x, a, b, r, x_next, dt)."""

    @staticmethod
    def to_dict(sample: Sample) -> dict:
        return {
            "x": state_key(sample.x),
            "a": sample.a,
            "b": sample.b,
            "r": sample.r,
            "x_next": state_key(sample.x_next),
            "dt": sample.dt,
        }

    @staticmethod
    def to_entity(record: dict) -> Sample:
        return Sample(
            x=parse_state_key(record["x"]),
            a=record["a"],
            b=record["b"],
            r=record["r"],
            x_next=parse_state_key(record["x_next"]),
            dt=record["dt"],
        )

    @staticmethod
    def dataset_records(ds: Dataset) -> list[dict]:
        return [SampleMapper.to_dict(s) for s in ds.samples]


class SolutionMapper:
    """ShapleySolution → 개별 산출물 딕셔너리."""

    @staticmethod
    def v_star_dict(solution: ShapleySolution) -> dict:
        return {
            "states": {
                state_key(x): float(v)
                for x, v in zip(solution.q_star.states, solution.v_star)
            }
        }

    @staticmethod
    def convergence_dict(solution: ShapleySolution) -> dict:
        return {
            "iterations": solution.iterations,
            "bellman_residual": solution.bellman_residual,
            "delta_trace": list(solution.delta_trace),
        }


class TrainReportMapper:
    """TrainReport → JSON 보고서 및 CSV 행."""

    @staticmethod
    def to_dict(report: TrainReport, params: GameParams) -> dict:
        return {
            "converged": report.converged,
            "iterations": report.iterations,
            "theta_final": (
                list(report.theta_trace[-1]) if report.theta_trace else None
            ),
            "theta_trace": [list(theta) for theta in report.theta_trace],
            "diagnostics": [
                d.model_dump(exclude={"theta"}) for d in report.diagnostics
            ],
            "params": params.model_dump(by_alias=True),
        }

    @staticmethod
    def csv_header(d: int) -> list[str]:
        return (
            ["iteration"] + [f"theta_{i}" for i in range(d)] + list(TRACE_COLUMNS)
        )

    @staticmethod
    def csv_rows(report: TrainReport) -> list[list]:
        return [
            [diag.iteration]
            + list(diag.theta)
            + [
                diag.td_error,
                diag.exploration_rate,
                diag.dataset_size,
                diag.inner_iterations,
                int(diag.inner_converged),
            ]
            for diag in report.diagnostics
        ]


class BoundReportMapper:
    @staticmethod
    def to_dict(report: BoundReport) -> dict:
        return report.model_dump()


def to_builtin(value: Any) -> Any:
    """numpy 스칼라/배열을 JSON 직렬화 가능한 파이썬 값으로 변환."""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value
