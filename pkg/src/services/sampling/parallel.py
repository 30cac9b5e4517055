"""
Chunked joblib execution with index-ordered gathering.
"""

from collections.abc import Callable
from typing import Optional, TypeVar, Union

from joblib import Parallel, delayed

from src.config import settings
from src.services.sampling.seeding import index_chunks

T = TypeVar("T")

Threads = Union[int, str, None]


def resolve_threads(threads: Threads = None) -> int:
    """Worker count for joblib; "auto" means every core (-1)."""
    value = settings.default_threads if threads is None else threads
    if value == "auto":
        return -1
    count = int(value)
    return count if count >= 1 else 1


def map_chunks(
    fn: Callable[[range], T],
    n: int,
    threads: Threads = None,
    chunk_size: Optional[int] = None,
) -> list[T]:
    """
    Evaluate ``fn`` on contiguous index chunks of 0..n-1.

    Results come back in chunk order whatever the worker count, so reductions
    over them are reproducible.
    """
    chunks = index_chunks(n, chunk_size or settings.sample_chunk_size)
    n_jobs = resolve_threads(threads)
    if n_jobs == 1 or len(chunks) <= 1:
        return [fn(chunk) for chunk in chunks]
    return Parallel(n_jobs=n_jobs)(delayed(fn)(chunk) for chunk in chunks)
