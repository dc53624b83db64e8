"""Thread pool helper that is safe with mpmath's global working precision.

mpmath keeps one process-wide precision, and ``workprec`` restores the saved
value on exit. Threads that enter and leave ``workprec`` concurrently would
otherwise reset each other's precision. Holding the target precision in the
calling thread for the lifetime of the pool makes every nested save/restore
a no-op, as long as all workers use that same precision.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import mpmath


def pooled_map(fn, items, threads: int | None, precision: int) -> list:
    items = list(items)
    if not threads or threads <= 1:
        return [fn(x) for x in items]
    with mpmath.workprec(precision):
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
