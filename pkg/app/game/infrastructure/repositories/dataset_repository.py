"""Dataset Repository Implementation.

Newline-delimited JSON, one sample per line:
{"a": 0, "b": 1, "dt": 0.31, "r": 0.93, "x": "1,0", "x_next": "1,1"}
"""

import logging
from pathlib import Path

import rapidjson
from pydantic import ValidationError

from app.common.exception import ConfigError, InsufficientDataError
from app.game.application.ports import DatasetRepositoryInterface
from app.game.domain.entities import Dataset
from app.game.infrastructure.persistence.mappers import SampleMapper

logger = logging.getLogger(__name__)


class DatasetRepositoryImpl(DatasetRepositoryInterface):
    """NDJSON 파일 기반 데이터셋 저장소."""

    def save(self, ds: Dataset, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as fh:
            for record in SampleMapper.dataset_records(ds):
                fh.write(rapidjson.dumps(record, sort_keys=True))
                fh.write("\n")
        logger.info("Wrote %d samples to %s", ds.n, path)
        return path

    def load(self, path: str | Path) -> Dataset:
        """데이터셋 읽기.

        Raises:
            ConfigError: 파일이 없거나 레코드 형식이 잘못된 경우
            InsufficientDataError: 샘플이 하나도 없는 경우
        """
        path = Path(path)
        samples = []
        try:
            with path.open(encoding="utf-8") as fh:
                for line_no, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        samples.append(
                            SampleMapper.to_entity(rapidjson.loads(line))
                        )
                    except (
                        rapidjson.JSONDecodeError,
                        ValidationError,
                        KeyError,
                        TypeError,
                        ValueError,
                    ) as exc:
                        raise ConfigError(
                            message=f"{path}:{line_no}: malformed sample ({exc})"
                        ) from exc
        except FileNotFoundError as exc:
            raise ConfigError(message=f"Dataset not found: {path}") from exc
        if not samples:
            raise InsufficientDataError(message=f"Dataset {path} is empty")
        logger.info("Loaded %d samples from %s", len(samples), path)
        return Dataset.from_samples(samples)
