"""Selects the exact elimination kernel at import time.

The compiled extension is preferred; the pure-Python module is a drop-in
fallback with identical semantics.  Set PNORMSIMPLEX_PURE_KERNELS=1 to force
the pure path (used by the benchmark and the parity tests).
"""

import os

from . import _purecore

if os.environ.get("PNORMSIMPLEX_PURE_KERNELS") == "1":
    _impl = _purecore
    BACKEND = "pure"
else:
    try:
        from . import _exactcore as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _purecore
        BACKEND = "pure"

mat_rank = _impl.mat_rank
solve_columns = _impl.solve_columns
basic_values = _impl.basic_values
dictionary_arrays = _impl.dictionary_arrays


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "pure"."""
    return BACKEND
