"""
Per-sample seed derivation.

Every sample gets its own generator seeded from (master seed, sample index),
so results do not depend on how samples are split across workers.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer: a 64-bit avalanche mix."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Seed of sample ``index`` under ``master`` (both taken modulo 2^64)."""
    return splitmix64(splitmix64(master & _MASK64) ^ (index & _MASK64))


def sample_rng(master: int, index: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, index))


def index_chunks(n: int, chunk_size: int) -> list[range]:
    """Contiguous index ranges covering 0..n-1 in order."""
    return [range(start, min(start + chunk_size, n)) for start in range(0, n, chunk_size)]
