"""Fixed-size, independently seeded sample blocks.

Block k of a run with seed s always draws from SeedSequence(s, spawn_key=(k,)),
so results do not depend on how blocks are grouped across workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, TypeVar

import numpy as np

BLOCK_SIZE = 4096

T = TypeVar("T")


def block_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def block_sizes(n: int, block_size: int = BLOCK_SIZE) -> list[int]:
    full, rest = divmod(n, block_size)
    return [block_size] * full + ([rest] if rest else [])


def run_blocks(
    fn: Callable[[int, int, int], T], n: int, seed: int, workers: int = 1
) -> list[T]:
    """Evaluate fn(seed, index, size) for each block, in block order."""
    sizes = block_sizes(n)
    args = [(seed, k, m) for k, m in enumerate(sizes)]
    if workers <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*args)))
