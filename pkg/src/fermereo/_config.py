"""Global numerical tolerance and the JIT switch."""

from __future__ import annotations

import contextlib
import contextvars
import os

DEFAULT_EPS = 1e-9

_eps: contextvars.ContextVar[float] = contextvars.ContextVar("fermereo_eps", default=DEFAULT_EPS)


def _truthy(value: str | None) -> bool:
    return value is not None and value.strip().lower() in {"1", "true", "yes", "on"}


# Read once at import; the kernels module picks its implementation from this.
JIT_ENABLED = not _truthy(os.environ.get("FERMEREO_DISABLE_JIT"))


def get_eps() -> float:
    return _eps.get()


def resolve_eps(eps: float | None) -> float:
    return _eps.get() if eps is None else float(eps)


@contextlib.contextmanager
def tolerance(eps: float):
    """Temporarily change the tolerance used for rank cuts and equality tests."""
    if not eps > 0:
        raise ValueError(f"epsilon must be positive, got {eps!r}")
    token = _eps.set(float(eps))
    try:
        yield eps
    finally:
        _eps.reset(token)
