"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``PHRIGID_PURE=1`` in the environment to force the fallback.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("PHRIGID_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

MAX_VERTEX_BITS = 64


def _check_bits(masks):
    for v in masks:
        if int(v) >> MAX_VERTEX_BITS:
            raise ValueError("vertex masks wider than 64 bits are not supported")


def union_popcount(vmasks, mark, impl=None):
    impl = impl or _impl
    _check_bits(list(vmasks) + [mark])
    return np.asarray(impl.union_popcount(list(vmasks), int(mark)), dtype=np.int64)


def partition_min(values, m, impl=None):
    impl = impl or _impl
    vals = np.asarray(values, dtype=np.int64)
    if impl is _pykernels:
        vals = [int(v) for v in vals]
    best, choice = impl.partition_min(vals, int(m))
    return np.asarray(best, dtype=np.int64), np.asarray(choice, dtype=np.int64)


def superset_closure(flags, m, impl=None):
    impl = impl or _impl
    flags = np.asarray(flags)
    if impl is _pykernels:
        flags = [int(f) for f in flags]
    return np.asarray(impl.superset_closure(flags, int(m)), dtype=bool)


def component_correction(m, eu, ev, kind, cls, impl=None):
    impl = impl or _impl
    if cls and max(cls) >= 64:
        raise ValueError("at most 64 loop classes are supported")
    return np.asarray(
        impl.component_correction(int(m), list(eu), list(ev), list(kind), list(cls)),
        dtype=np.int64,
    )


def compiled():
    """Return the compiled module, or None if it was not built."""
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


def pure():
    return _pykernels
