"""Shared numba shim.

The hot kernel in this package (the canonical-labelling search inside
``graphs.canonicalize``) is written once, in a numpy/loop style that numba
can compile.  When numba is importable and not disabled, the decorated
function is jitted; otherwise the same source runs under plain CPython on
numpy arrays.  Set ``GCWB_NO_NUMBA=1`` to force the interpreted path (used
by the benchmark script to measure the speedup).  The Monte Carlo weight
integrand needs no such treatment: it is evaluated batch-at-a-time with
vectorized numpy and spends its life inside ``np.linalg.det``.
"""

import os

_DISABLED = os.environ.get("GCWB_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled by GCWB_NO_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        # transparent decorator: @njit and @njit(cache=True) both work
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap

njit = _njit
