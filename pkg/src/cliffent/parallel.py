"""Deterministic worker-pool helper.

Work items carry their own substreams, so results are a pure function of
the item; the pool only changes wall-clock time.  Results are yielded in
submission order regardless of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    return os.cpu_count() or 1


def indexed_map(
    fn: Callable[[T], R], items: Sequence[T], threads: int | None = None
) -> Iterator[R]:
    """Map fn over items, in-order results, optional thread pool."""
    if threads is None or threads <= 1 or len(items) <= 1:
        for item in items:
            yield fn(item)
        return
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        futures = [pool.submit(fn, item) for item in items]
        for fut in futures:
            yield fut.result()
