"""Numba/numpy backend selection.

Hot kernels (hypergeometric series, kernel-matrix assembly, pairwise particle
forces) are written as scalar/loop code and compiled with numba when it is
available.  Setting RIESZ_EQ_BACKEND=numpy forces the pure numpy/Python path;
RIESZ_EQ_BACKEND=numba demands numba and raises if it cannot be imported.
The default ("auto") uses numba when importable.

``benchmarks/bench_backends.py`` times both paths side by side.
"""

from __future__ import annotations

import os

_requested = os.environ.get("RIESZ_EQ_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"RIESZ_EQ_BACKEND must be 'auto', 'numba' or 'numpy', got {_requested!r}"
    )

_numba = None
if _requested in ("auto", "numba"):
    try:
        import numba as _numba
    except ImportError:
        if _requested == "numba":
            raise RuntimeError("RIESZ_EQ_BACKEND=numba but numba is not importable")
        _numba = None

USE_NUMBA = _numba is not None
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func=None, **kwargs):
    """numba.njit when the numba backend is active, identity otherwise."""
    if func is None:
        return lambda f: njit(f, **kwargs)
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return _numba.njit(func, **kwargs)
    return func
