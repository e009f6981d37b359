"""Test configuration and fixtures.

게임 파라미터 묶음과 시드 고정 난수 생성기, CLI 실험 문서 작성 헬퍼를
제공합니다. 모든 테스트는 외부 서비스 없이 실행됩니다.
"""

import logging
import os

import pytest
import rapidjson

# Sentry는 테스트에서 항상 끈다.
os.environ["SENTRY_ENABLED"] = "false"
os.environ.setdefault("LSPI_ENV", "local")

from app.common.utils.rng import make_rng  # noqa: E402
from app.game.domain.value_objects import GameParams  # noqa: E402
from tests.factories import make_params  # noqa: E402


@pytest.fixture(autouse=True)
def propagate_app_logs():
    """CLI 테스트가 dictConfig를 적용한 뒤에도 caplog가 app 로그를 받는다."""
    logging.getLogger("app").propagate = True
    yield


@pytest.fixture
def tiny_params() -> GameParams:
    """m=2, L=1, γ=0.9 (4 states)."""
    return make_params(m=2, L=1, gamma=0.9)


@pytest.fixture
def small_params() -> GameParams:
    """m=2, L=2, γ=0.5 (9 states)."""
    return make_params(m=2, L=2, gamma=0.5)


@pytest.fixture
def oracle_params() -> GameParams:
    """m=2, L=3, γ=0.9 (16 states)."""
    return make_params(m=2, L=3, gamma=0.9)


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture
def write_config(tmp_path):
    """실험 문서를 tmp_path에 JSON으로 저장하고 경로를 돌려준다."""

    def _write(document: dict, name: str = "config.json") -> str:
        path = tmp_path / name
        path.write_text(rapidjson.dumps(document), encoding="utf-8")
        return str(path)

    return _write
