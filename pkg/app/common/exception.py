from typing import Any, Dict, Optional


class AppException(Exception):
    exit_code = 1
    message = "An unknown error"
    extra: Dict[str, Any] = {}

    def __init__(
        self,
        *,
        message: Optional[str] = None,
        exit_code: Optional[int] = None,
        extra: Optional[dict] = None,
    ):
        if message is not None:
            self.message = message

        if exit_code is not None:
            self.exit_code = exit_code

        if extra is not None:
            self.extra = extra

        super().__init__(self.message, self.exit_code)

    def __str__(self):
        return str(self.message)

    def __repr__(self):
        return self.__str__()

    def to_dict(self) -> dict:
        content = {
            "error": type(self).__name__,
            "message": self.message,
            "exit_code": self.exit_code,
        }
        if self.extra:
            content.update(self.extra)
        return content


class DomainError(AppException, ValueError):
    """게임 규칙이나 수치 입력이 도메인 제약을 위반한 경우."""

    exit_code = 1
    message = "Domain constraint violated"


class ConfigError(AppException):
    exit_code = 1
    message = "Invalid configuration"


class CapacityExceededError(AppException):
    exit_code = 2
    message = "State space exceeds the configured cap"


class DatasetMismatchError(AppException):
    exit_code = 2
    message = "Dataset does not match the game parameters"


class InsufficientDataError(AppException):
    exit_code = 2
    message = "Not enough samples for the requested computation"


class DegenerateFeaturesError(AppException):
    exit_code = 3
    message = "Feature Gram matrix is numerically zero"


class ConvergenceError(AppException):
    exit_code = 3
    message = "Iteration did not converge"


class NumericalDivergenceError(AppException):
    """가중치 노름이 발산 임계값을 넘은 경우.

    partial_report에는 발산 직전까지의 학습 기록이 담길 수 있습니다.
    """

    exit_code = 3
    message = "Weight vector diverged"

    def __init__(
        self,
        message: Optional[str] = None,
        iteration: Optional[int] = None,
        partial_report: Any = None,
    ):
        self.iteration = iteration
        self.partial_report = partial_report
        extra = {}
        if iteration is not None:
            extra["iteration"] = iteration

        super().__init__(message=message, extra=extra or None)
