"""CLI command handlers.

실험 문서를 읽고 검증한 뒤, 명령에 맞는 유스케이스로 전달합니다.
"""

import logging
from pathlib import Path
from typing import Any

import rapidjson
from pydantic import ValidationError

from app.common.exception import ConfigError
from app.game.container import GameContainer
from app.game.presentation.cli.schemas import (
    BoundRequest,
    CollectRequest,
    EvaluateRequest,
    ExperimentRequest,
    SolveExactRequest,
    TrainRequest,
    experiment_adapter,
)

logger = logging.getLogger(__name__)


def _format_validation_error(exc: ValidationError) -> str:
    problems = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"])
        problems.append(f"{location}: {error['msg']}")
    return "; ".join(problems)


def load_request(
    config_path: str | Path, command: str, seed: int | None = None
) -> ExperimentRequest:
    """실험 문서 읽기 및 검증.

    --seed가 주어지면 검증 전에 문서의 seed를 덮어씁니다.

    Raises:
        ConfigError: 파일이 없거나, JSON이 아니거나, 스키마 검증에 실패한 경우
    """
    path = Path(config_path)
    try:
        document: Any = rapidjson.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(message=f"Config not found: {path}") from exc
    except (rapidjson.JSONDecodeError, ValueError) as exc:
        raise ConfigError(message=f"Invalid JSON in {path}: {exc}") from exc

    if not isinstance(document, dict):
        raise ConfigError(message=f"{path}: expected a JSON object")
    if document.get("command") != command:
        raise ConfigError(
            message=(
                f"{path}: document command {document.get('command')!r} "
                f"does not match subcommand {command!r}"
            )
        )
    if seed is not None:
        document["seed"] = seed

    try:
        return experiment_adapter.validate_python(document)
    except ValidationError as exc:
        raise ConfigError(
            message=f"{path}: {_format_validation_error(exc)}",
            extra={"errors": exc.error_count()},
        ) from exc


def run_command(request: ExperimentRequest, container: GameContainer) -> None:
    """검증된 문서를 해당 유스케이스로 실행."""
    logger.info("Running %s (seed=%d)", request.command, request.seed)
    if isinstance(request, SolveExactRequest):
        container.solve_exact_use_case().execute(request)
    elif isinstance(request, TrainRequest):
        container.train_use_case().execute(request)
    elif isinstance(request, EvaluateRequest):
        container.evaluate_use_case().execute(request)
    elif isinstance(request, BoundRequest):
        container.bound_use_case().execute(request)
    elif isinstance(request, CollectRequest):
        container.collect_use_case().execute(request)
    else:  # pragma: no cover - the adapter admits only the five documents
        raise ConfigError(message=f"Unknown command {request.command!r}")
