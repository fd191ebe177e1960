"""``njit`` shim: real numba when enabled and importable, identity otherwise."""

from __future__ import annotations

from ._config import JIT_ENABLED

try:
    if not JIT_ENABLED:
        raise ImportError
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def njit(func=None, **kwargs):
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return _numba_njit(**kwargs)(func) if func is not None else _numba_njit(**kwargs)
    if func is not None:
        return func

    def wrapper(f):
        return f

    return wrapper
