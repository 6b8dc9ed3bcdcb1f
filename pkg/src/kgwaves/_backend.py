"""Selects the Verlet kernel at import time.

The compiled extension is used when it was built; ``KGWAVES_BACKEND=python``
forces the numpy fallback.
"""

from __future__ import annotations

import os

from . import _verlet_py

try:
    from . import _verlet as _compiled
except ImportError:  # extension not built
    _compiled = None

_KERNELS = {"python": _verlet_py.verlet_run}
if _compiled is not None:
    _KERNELS["cython"] = _compiled.verlet_run


def available() -> list[str]:
    return sorted(_KERNELS)


def _default() -> str:
    forced = os.environ.get("KGWAVES_BACKEND", "").strip().lower()
    if forced:
        if forced not in _KERNELS:
            raise ImportError(f"KGWAVES_BACKEND={forced!r} is not available ({available()})")
        return forced
    return "cython" if "cython" in _KERNELS else "python"


DEFAULT = _default()


def kernel(name: str | None = None):
    name = name or DEFAULT
    try:
        return _KERNELS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {available()}") from None
