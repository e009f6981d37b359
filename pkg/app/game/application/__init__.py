"""Game Application Layer - Use Cases and Services.

Clean Architecture의 Application Layer로, 실험 유스케이스를 정의합니다.
각 Use Case는 하나의 CLI 명령을 담당하며, 도메인 서비스를 조합합니다.
"""

from .use_cases import (
    BoundUseCase,
    CollectUseCase,
    EvaluateUseCase,
    SolveExactUseCase,
    TrainUseCase,
)

__all__ = [
    "SolveExactUseCase",
    "TrainUseCase",
    "EvaluateUseCase",
    "BoundUseCase",
    "CollectUseCase",
]
