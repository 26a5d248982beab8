"""Kernel selection: compiled canonical-labeling core with pure-Python fallback.

Set CHORDAL_PURE_CANON=1 to force the pure implementation (used by the
benchmark and the cross-implementation tests).
"""

import os

MODE_CLOSED = 0
MODE_FIXED = 1
MODE_FREE = 2

if os.environ.get("CHORDAL_PURE_CANON"):
    from ._canon_py import canonical_search

    backend = "python"
else:
    try:
        from ._canon_cy import canonical_search  # type: ignore[no-redef]

        backend = "cython"
    except ImportError:
        from ._canon_py import canonical_search  # type: ignore[no-redef]

        backend = "python"
