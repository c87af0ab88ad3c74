"""Small shared helpers."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def pmap(fn: Callable[[T], R], items: Sequence[T], width: int = 1) -> list[R]:
    """Order-preserving map, optionally fanned out over ``width`` threads.

    Results are collected in input order, so callers get identical output
    for every width; parallelism is strictly a hint.
    """
    if width <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=width) as pool:
        return list(pool.map(fn, items))
