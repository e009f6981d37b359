"""Game Dependency Injection Container.

CLI 명령마다 Use Case와 Repository 의존성을 조립합니다.
외부 라이브러리 없이 순수 Python으로 구현된 간단한 DI 패턴입니다.
"""

from pathlib import Path

from app.game.application.ports import (
    ArtifactRepositoryInterface,
    DatasetRepositoryInterface,
)
from app.game.application.use_cases import (
    BoundUseCase,
    CollectUseCase,
    EvaluateUseCase,
    SolveExactUseCase,
    TrainUseCase,
)
from app.game.infrastructure.repositories import (
    ArtifactRepositoryImpl,
    DatasetRepositoryImpl,
)
from config.settings import settings


class GameContainer:
    """Game 모듈 의존성 컨테이너.

    출력 디렉터리는 실행마다 주입받아 사용합니다.
    """

    def __init__(self, out_dir: str | Path | None = None):
        self._out_dir = Path(out_dir or settings.default_output_dir)
        self._artifacts: ArtifactRepositoryInterface | None = None

    # === Repository Factories ===

    @property
    def artifact_repository(self) -> ArtifactRepositoryInterface:
        """산출물 저장소 (싱글톤)."""
        if self._artifacts is None:
            self._artifacts = ArtifactRepositoryImpl(self._out_dir)
        return self._artifacts

    def dataset_repository(self) -> DatasetRepositoryInterface:
        """데이터셋 저장소."""
        return DatasetRepositoryImpl()

    # === Use Case Factories ===

    def solve_exact_use_case(self) -> SolveExactUseCase:
        """정확 해 유스케이스."""
        return SolveExactUseCase(artifact_repository=self.artifact_repository)

    def train_use_case(self) -> TrainUseCase:
        """학습 유스케이스."""
        return TrainUseCase(artifact_repository=self.artifact_repository)

    def evaluate_use_case(self) -> EvaluateUseCase:
        """정책 평가 유스케이스."""
        return EvaluateUseCase(artifact_repository=self.artifact_repository)

    def bound_use_case(self) -> BoundUseCase:
        """오차 상한 유스케이스."""
        return BoundUseCase(
            artifact_repository=self.artifact_repository,
            dataset_repository=self.dataset_repository(),
        )

    def collect_use_case(self) -> CollectUseCase:
        return CollectUseCase(
            artifact_repository=self.artifact_repository,
            dataset_repository=self.dataset_repository(),
        )
