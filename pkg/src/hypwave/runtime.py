"""Worker-pool plumbing.

Band projections, Monte-Carlo draws and corpus items are embarrassingly
parallel.  ``ordered_map`` fans work out to a thread pool (numpy releases
the GIL inside FFTs) but always assembles results in submission order, so
any reduction downstream sees a fixed deterministic ordering regardless of
the worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

_max_workers = None


def set_max_workers(n):
    global _max_workers
    if n is not None and n < 1:
        raise ValueError("worker count must be >= 1")
    _max_workers = n


def get_max_workers() -> int:
    if _max_workers is not None:
        return _max_workers
    env = os.environ.get("HYPWAVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def ordered_map(fn, items):
    """Apply ``fn`` over ``items``, preserving input order in the output."""
    items = list(items)
    workers = get_max_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
