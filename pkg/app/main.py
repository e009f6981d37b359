"""minimax-lspi entry point.

로깅/Sentry를 초기화하고, 명령을 실행한 뒤 예외를 종료 코드로 변환합니다.
종료 코드: 0 성공, 1 설정/스키마 오류, 2 자원/용량 오류, 3 수치 발산.
"""

import sys
from logging import config as logging_config
from typing import Optional, Sequence

from app.common.exception import AppException
from app.common.logging import error_logger, get_console_logging_config, logger
from app.game.container import GameContainer
from app.game.presentation.cli.commands import load_request, run_command
from app.game.presentation.cli.parser import build_parser
from config.settings import settings

try:
    import sentry_sdk
except ImportError:  # pragma: no cover - optional dependency guard
    sentry_sdk = None

_SENTRY_INITIALIZED = False


def _should_enable_sentry(
    dsn: str, environment: str, enabled_environments: list[str]
) -> bool:
    if not settings.sentry_enabled or not dsn.strip():
        return False
    return environment.strip().lower() in enabled_environments


def _initialize_sentry() -> bool:
    global _SENTRY_INITIALIZED

    if _SENTRY_INITIALIZED:
        return True

    if sentry_sdk is None:
        logger.warning("sentry-sdk is not installed. Skipping Sentry setup.")
        return False

    sentry_sdk.init(
        dsn=settings.sentry_dsn,
        environment=settings.LSPI_ENV.lower(),
        traces_sample_rate=settings.sentry_traces_sample_rate,
        send_default_pii=False,
    )
    _SENTRY_INITIALIZED = True
    logger.info("Sentry initialized.")
    return True


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI 실행.

    Returns:
        프로세스 종료 코드
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    quiet = "--quiet" in argv
    logging_config.dictConfig(
        get_console_logging_config(settings.is_prod(), quiet=quiet)
    )
    sentry_enabled = _should_enable_sentry(
        dsn=settings.sentry_dsn,
        environment=settings.LSPI_ENV,
        enabled_environments=settings.sentry_enabled_environments_list,
    ) and _initialize_sentry()

    try:
        args = build_parser().parse_args(argv)
        request = load_request(args.config, args.command, args.seed)
        run_command(request, GameContainer(out_dir=args.out))
    except AppException as exc:
        error_logger.error(
            "%s (exit %d): %s",
            type(exc).__name__,
            exc.exit_code,
            exc.message,
        )
        return exc.exit_code
    except Exception as exc:
        error_logger.exception("Unexpected error: %s", exc)
        if sentry_enabled:
            sentry_sdk.capture_exception(exc)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
