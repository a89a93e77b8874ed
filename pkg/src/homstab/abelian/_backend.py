"""Kernel selection.

The compiled int64 kernels are used when importable, unless the
``HOMSTAB_PURE`` environment variable is set. Any ``OverflowError`` from a
compiled kernel reruns the same computation on Python integers, so results
never depend on which backend ran.
"""
import os

from . import _pure

try:
    if os.environ.get("HOMSTAB_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _fast
except ImportError:
    _fast = None

BACKEND = "python" if _fast is None else "cython"


def smith_reduce(a, m, n, backend=None):
    kernel = _pick(backend)
    if kernel is not _pure:
        try:
            return kernel.smith_reduce(a, m, n)
        except OverflowError:
            pass
    return _pure.smith_reduce(a, m, n)


def hermite_reduce(a, m, n, backend=None):
    kernel = _pick(backend)
    if kernel is not _pure:
        try:
            return kernel.hermite_reduce(a, m, n)
        except OverflowError:
            pass
    return _pure.hermite_reduce(a, m, n)


def _pick(backend):
    if backend is None:
        backend = BACKEND
    if backend == "python":
        return _pure
    if backend == "cython":
        if _fast is None:
            raise RuntimeError("compiled kernels are not available")
        return _fast
    raise ValueError(f"unknown backend {backend!r}")
