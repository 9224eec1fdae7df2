"""Optional numba acceleration.

Set ``ADDSEQ_DISABLE_NUMBA=1`` to force the pure numpy/Python paths, e.g.
to compare timings or to debug a kernel with a regular traceback.
"""

import os

_DISABLED = os.environ.get("ADDSEQ_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by ADDSEQ_DISABLE_NUMBA")
    from numba import njit as _njit

    NUMBA_ENABLED = True
except ImportError:
    _njit = None
    NUMBA_ENABLED = False


def njit(fn):
    """Compile ``fn`` with numba when enabled; otherwise return it unchanged."""
    if NUMBA_ENABLED:
        return _njit(cache=True, nogil=True)(fn)
    return fn
