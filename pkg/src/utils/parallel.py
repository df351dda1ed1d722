"""
Thread-pool helpers with deterministic result ordering
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(requested: Optional[int] = None) -> int:
    """
    Number of worker threads, capped by HYPWAVE_THREADS

    Args:
        requested: Thread count asked for by configuration

    Returns:
        Positive thread count
    """
    count = requested or os.cpu_count() or 1
    cap = os.environ.get("HYPWAVE_THREADS", "").strip()
    if cap:
        try:
            count = min(count, max(1, int(cap)))
        except ValueError:
            logger.warning(f"Ignoring non-integer HYPWAVE_THREADS={cap!r}")
    return max(1, count)


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Map fn over items in a thread pool; results come back in input order

    Args:
        fn: Function applied to each item
        items: Inputs
        threads: Requested worker count (see resolve_threads)

    Returns:
        List of results aligned with items
    """
    items = list(items)
    workers = min(resolve_threads(threads), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
