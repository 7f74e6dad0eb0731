"""Counter-based random streams.

All samplers take an integer seed and derive independent streams from a
Philox counter generator keyed by (seed, stream).  Identical (seed, stream)
pairs reproduce bit-identical draws on any platform.
"""
from __future__ import annotations

import numpy as np

__all__ = ["stream", "substreams"]


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Return the Philox generator for (seed, index)."""
    if seed is None:
        raise ValueError("seed must be an integer, not None")
    return np.random.Generator(np.random.Philox(key=np.array(
        [np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(index & 0xFFFFFFFFFFFFFFFF)])))


def substreams(seed: int, count: int, base: int = 0):
    """Independent replica streams for parallel/batched sampling."""
    return [stream(seed, base + k) for k in range(count)]
