"""Artifact Repository Implementation.

실험 산출물을 출력 디렉터리에 기록합니다. JSON은 python-rapidjson으로
키 정렬 + 들여쓰기 2칸으로 쓰므로 같은 입력이면 바이트 단위로 동일합니다.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Any, Sequence

import rapidjson

from app.common.exception import ConfigError
from app.game.application.ports import ArtifactRepositoryInterface
from app.game.domain.value_objects import MixedPolicy
from app.game.infrastructure.persistence.mappers import PolicyMapper, to_builtin

logger = logging.getLogger(__name__)


def dumps(payload: Any) -> str:
    return rapidjson.dumps(to_builtin(payload), sort_keys=True, indent=2) + "\n"


class ArtifactRepositoryImpl(ArtifactRepositoryInterface):
    """파일 시스템 기반 산출물 저장소."""

    def __init__(self, out_dir: str | Path):
        self._out_dir = Path(out_dir)

    @property
    def out_dir(self) -> Path:
        return self._out_dir

    def _target(self, name: str) -> Path:
        self._out_dir.mkdir(parents=True, exist_ok=True)
        return self._out_dir / name

    def write_json(self, name: str, payload: Any) -> Path:
        path = self._target(name)
        path.write_text(dumps(payload), encoding="utf-8")
        logger.info("Wrote %s", path)
        return path

    def write_csv(
        self, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]
    ) -> Path:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])
        path = self._target(name)
        path.write_text(buffer.getvalue(), encoding="utf-8")
        logger.info("Wrote %s", path)
        return path

    def read_json(self, path: str | Path) -> Any:
        """JSON 문서 읽기.

        Raises:
            ConfigError: 파일이 없거나 JSON이 아닌 경우
        """
        try:
            return rapidjson.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise ConfigError(message=f"File not found: {path}") from exc
        except (rapidjson.JSONDecodeError, ValueError) as exc:
            raise ConfigError(message=f"Invalid JSON in {path}: {exc}") from exc

    def load_policy(self, path: str | Path) -> MixedPolicy:
        return PolicyMapper.to_entity(self.read_json(path))


def _csv_cell(value: Any) -> Any:
    # repr keeps the shortest round-trip form of floats
    if isinstance(value, float):
        return repr(value)
    return value
