"""Kernel dispatch.

The hot inner loops (span closure, pairwise-sum joins, essentiality and
closedness scans, greedy complements) exist twice: numba @njit versions in
_kernels_numba and pure-numpy versions in _kernels_numpy.  The MODLAB_BACKEND
environment variable picks the implementation:

  MODLAB_BACKEND=numba   force numba (ImportError if unavailable)
  MODLAB_BACKEND=numpy   force the pure-numpy fallback
  MODLAB_BACKEND=auto    numba when importable, numpy otherwise (default)

Coordinate-space helpers (for modules too large for an addition table) are
vectorized numpy either way.
"""

import os

import numpy as np

from . import _kernels_numpy as _np_impl

_choice = os.environ.get("MODLAB_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"MODLAB_BACKEND must be auto|numba|numpy, got {_choice!r}")

_nb_impl = None
if _choice in ("auto", "numba"):
    try:
        from . import _kernels_numba as _nb_impl
    except ImportError:
        if _choice == "numba":
            raise
        _nb_impl = None

_impl = _nb_impl if _nb_impl is not None else _np_impl
BACKEND = "numba" if _nb_impl is not None else "numpy"

span_closure_table = _impl.span_closure_table
sum_sets_table = _impl.sum_sets_table
is_essential = _impl.is_essential
is_closed = _impl.is_closed
greedy_complement = _impl.greedy_complement


def encode_coords(coords, orders, strides):
    """Mixed-radix encode, vectorized over leading axes."""
    if orders.shape[0] == 0:
        return np.zeros(coords.shape[:-1], dtype=np.int64)
    return (coords % orders) @ strides


def sum_sets_coords(a_idx, b_idx, coords_all, orders, strides, n):
    """{a + b} without an addition table (large ambient modules)."""
    a = coords_all[np.asarray(a_idx, dtype=np.int64)]
    b = coords_all[np.asarray(b_idx, dtype=np.int64)]
    sums = a[:, None, :] + b[None, :, :]
    idx = encode_coords(sums.reshape(-1, coords_all.shape[1]), orders, strides)
    flags = np.zeros(n, dtype=bool)
    flags[idx] = True
    return flags
