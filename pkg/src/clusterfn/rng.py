"""Keyed Philox substreams.

Every random quantity is drawn from a generator keyed by ``(seed, purpose,
index)``, so a vertex's draws do not depend on which worker handles it or in
what order vertices are visited.
"""

from __future__ import annotations

import enum

import numpy as np

_MASK64 = (1 << 64) - 1
_INDEX_BITS = 48


class Stream(enum.IntEnum):
    ACTIVE_SET = 1
    MEMORYLESS_SET = 2
    WEIGHT_A = 3
    WEIGHT_B = 4
    INHOM_ROW = 5
    MEMORYLESS_ROW = 6
    UNIFORM_SUBSET = 7
    DEGREE_MARK = 8
    ACTIVE_SIZE = 9


def substream(seed: int, stream: Stream | int, index: int = 0) -> np.random.Generator:
    """Independent generator for ``index`` within the ``stream`` family of ``seed``."""
    if not 0 <= index < (1 << _INDEX_BITS):
        raise ValueError("substream index out of range")
    key = np.array([int(seed) & _MASK64, (int(stream) << _INDEX_BITS) | int(index)],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
