"""Best-effort cap on worker threads, read from HANKEL_LAB_THREADS.

Must run before numpy is imported, because BLAS pools size themselves at
load time. A value of 0 (or an unset/garbage variable) leaves the library
defaults alone. Existing *_NUM_THREADS variables are never overridden.
"""

import os

_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
)


def apply_thread_cap() -> int:
    """Apply the cap and return it (0 means "auto", i.e. nothing was set)."""
    raw = os.environ.get("HANKEL_LAB_THREADS", "").strip()
    try:
        cap = int(raw) if raw else 0
    except ValueError:
        cap = 0
    if cap > 0:
        for var in _VARS:
            os.environ.setdefault(var, str(cap))
    return cap


apply_thread_cap()
