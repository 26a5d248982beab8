"""Deterministic parallel map.

Work is partitioned into independent units and recombined in input order,
so every width produces byte-identical reports.  Falls back to the serial
path when a pool cannot be created.
"""

from __future__ import annotations

import multiprocessing as mp


def pmap(fn, items, width=1):
    items = list(items)
    if width <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    try:
        ctx = mp.get_context("fork")
        with ctx.Pool(min(width, len(items))) as pool:
            return pool.map(fn, items, chunksize=max(1, len(items) // (4 * width)))
    except (OSError, ValueError, ImportError):
        return [fn(x) for x in items]
