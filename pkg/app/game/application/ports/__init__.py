"""Repository Interfaces (Ports) for Dependency Inversion.

유스케이스가 파일 포맷이나 저장 위치에 의존하지 않도록 인터페이스를 정의합니다.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Sequence

from app.game.domain.entities import Dataset
from app.game.domain.value_objects import MixedPolicy


class ArtifactRepositoryInterface(ABC):
    """실험 산출물(JSON 보고서, CSV 추적 기록, 정책 파일) 저장소 인터페이스."""

    @property
    @abstractmethod
    def out_dir(self) -> Path:
        """산출물 디렉터리."""
        pass

    @abstractmethod
    def write_json(self, name: str, payload: Any) -> Path:
        """출력 디렉터리에 JSON 문서 저장."""
        pass

    @abstractmethod
    def write_csv(
        self, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]
    ) -> Path:
        """출력 디렉터리에 CSV 저장."""
        pass

    @abstractmethod
    def read_json(self, path: str | Path) -> Any:
        """JSON 문서 읽기."""
        pass

    @abstractmethod
    def load_policy(self, path: str | Path) -> MixedPolicy:
        """정책 파일 읽기."""
        pass


class DatasetRepositoryInterface(ABC):
    """전이 샘플 데이터셋 저장소 인터페이스."""

    @abstractmethod
    def save(self, ds: Dataset, path: str | Path) -> Path:
        """데이터셋 저장."""
        pass

    @abstractmethod
    def load(self, path: str | Path) -> Dataset:
        """데이터셋 읽기."""
        pass


__all__ = [
    "ArtifactRepositoryInterface",
    "DatasetRepositoryInterface",
]
