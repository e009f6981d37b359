"""Seeded random streams.

All randomness flows from one configured seed. Each consumer derives its own
stream from a spawn key, so splitting work across workers never changes the
numbers any single stream produces.
"""

import numpy as np

from app.common.exception import DomainError

SEED_MAX = 2**64 - 1


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox 기반 독립 난수 스트림을 생성한다.

    Args:
        seed: 64비트 부호 없는 정수 시드
        stream: 하위 스트림 식별자 (예: 실행 번호, 롤아웃 번호)

    Returns:
        numpy Generator
    """
    if not 0 <= seed <= SEED_MAX:
        raise DomainError(
            message=f"seed must be an unsigned 64-bit integer: {seed}"
        )
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(stream))
    return np.random.Generator(np.random.Philox(sequence))

