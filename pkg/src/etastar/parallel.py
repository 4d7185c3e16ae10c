"""Deterministic sharded map-reduce over a process pool."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def map_shards(func: Callable[[T], R], shards: Sequence[T], jobs: int = 1) -> list[R]:
    """Apply ``func`` to every shard; results come back in shard order for any ``jobs``."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if jobs == 1 or len(shards) <= 1:
        return [func(s) for s in shards]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, shards))


def chunked(items: Sequence[T], size: int) -> list[Sequence[T]]:
    return [items[i:i + size] for i in range(0, len(items), size)]


def sum_shards(func: Callable[[T], int], shards: Iterable[T], jobs: int = 1) -> int:
    return sum(map_shards(func, list(shards), jobs))
